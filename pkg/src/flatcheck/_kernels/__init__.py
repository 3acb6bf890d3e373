"""Monomial kernel selection: compiled extension if available, else pure.

Set FLATCHECK_PURE_KERNELS=1 to force the pure-Python implementation
(used by the parity tests and the benchmark).
"""

import os

from . import pure

if os.environ.get("FLATCHECK_PURE_KERNELS"):
    _impl = pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

IMPLEMENTATION = _impl.IMPLEMENTATION
monomial_mul = _impl.monomial_mul
monomial_div = _impl.monomial_div
monomial_divides = _impl.monomial_divides
monomial_lcm = _impl.monomial_lcm
total_degree = _impl.total_degree
monomial_cmp = _impl.monomial_cmp
leading_exponent = _impl.leading_exponent
find_divisor = _impl.find_divisor
