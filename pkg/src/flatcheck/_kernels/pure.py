"""Pure-Python monomial kernels.

Exponent vectors are tuples of non-negative ints, one entry per ring
variable.  An order spec is a tuple of blocks; each block is a pair
``(kind, indices)`` with ``kind`` in ``{"lex", "degrevlex"}`` and
``indices`` the variable positions the block compares.  Blocks are
compared left to right.

The compiled kernel in ``_speedups.pyx`` implements the same functions
with identical semantics; ``tests/test_kernels.py`` checks parity.
"""

IMPLEMENTATION = "pure"


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(b, a):
    """b / a.  Caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(b, a))


def monomial_divides(a, b):
    """True iff a divides b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def total_degree(a):
    return sum(a)


def monomial_cmp(a, b, spec):
    """-1, 0, or 1 as a <, =, > b under the block order spec."""
    for kind, indices in spec:
        if kind == "degrevlex":
            da = 0
            db = 0
            for i in indices:
                da += a[i]
                db += b[i]
            if da != db:
                return -1 if da < db else 1
            for i in reversed(indices):
                if a[i] != b[i]:
                    return 1 if a[i] < b[i] else -1
        else:  # lex
            for i in indices:
                if a[i] != b[i]:
                    return -1 if a[i] < b[i] else 1
    return 0


def leading_exponent(exps, spec):
    """Largest exponent vector under spec among the iterable exps."""
    best = None
    for e in exps:
        if best is None or monomial_cmp(e, best, spec) > 0:
            best = e
    return best


def find_divisor(m, lms):
    """Index of the first entry of lms dividing m, or -1."""
    for i, lm in enumerate(lms):
        ok = True
        for x, y in zip(lm, m):
            if x > y:
                ok = False
                break
        if ok:
            return i
    return -1
