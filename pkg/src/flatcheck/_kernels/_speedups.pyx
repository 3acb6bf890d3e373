# cython: language_level=3
"""Compiled monomial kernels.

Semantically identical to ``pure.py`` (see its docstring for the data
layout); ``tests/test_kernels.py`` checks parity between the two.
"""

IMPLEMENTATION = "compiled"


def monomial_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    out = [0] * n
    for i in range(n):
        out[i] = <object> a[i] + <object> b[i]
    return tuple(out)


def monomial_div(tuple b, tuple a):
    """b / a.  Caller guarantees divisibility."""
    cdef Py_ssize_t i, n = len(b)
    out = [0] * n
    for i in range(n):
        out[i] = <object> b[i] - <object> a[i]
    return tuple(out)


def monomial_divides(tuple a, tuple b):
    """True iff a divides b."""
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <object> a[i] > <object> b[i]:
            return False
    return True


def monomial_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    out = [0] * n
    for i in range(n):
        out[i] = a[i] if <object> a[i] > <object> b[i] else b[i]
    return tuple(out)


def total_degree(tuple a):
    cdef Py_ssize_t i, n = len(a)
    total = 0
    for i in range(n):
        total += <object> a[i]
    return total


def monomial_cmp(tuple a, tuple b, tuple spec):
    """-1, 0, or 1 as a <, =, > b under the block order spec."""
    cdef Py_ssize_t j, k
    cdef tuple indices
    for block in spec:
        kind = <object> block[0]
        indices = <tuple> block[1]
        k = len(indices)
        if kind == "degrevlex":
            da = 0
            db = 0
            for j in range(k):
                i = indices[j]
                da += <object> a[i]
                db += <object> b[i]
            if da != db:
                return -1 if da < db else 1
            for j in range(k - 1, -1, -1):
                i = indices[j]
                if a[i] != b[i]:
                    return 1 if <object> a[i] < <object> b[i] else -1
        else:  # lex
            for j in range(k):
                i = indices[j]
                if a[i] != b[i]:
                    return -1 if <object> a[i] < <object> b[i] else 1
    return 0


def leading_exponent(exps, tuple spec):
    """Largest exponent vector under spec among the iterable exps."""
    best = None
    for e in exps:
        if best is None or monomial_cmp(e, best, spec) > 0:
            best = e
    return best


def find_divisor(tuple m, list lms):
    """Index of the first entry of lms dividing m, or -1."""
    cdef Py_ssize_t i, j, n = len(m)
    cdef tuple lm
    for i in range(len(lms)):
        lm = <tuple> lms[i]
        ok = True
        for j in range(n):
            if <object> lm[j] > <object> m[j]:
                ok = False
                break
        if ok:
            return i
    return -1
