"""Kernel selection for dense polynomial arithmetic over a prime field F_p.

Coefficient vectors are little-endian Python lists of ints in [0, p) with no
trailing zeros ([] is the zero polynomial).  Two backends provide the same
interface:

    mul(a, b, p)      -> product
    divmod_(a, b, p)  -> (quotient, remainder), b != 0

The compiled backend (`_speedups`, built from Cython) is used when available
unless the environment variable CARLITZ_NO_SPEEDUPS is set to a non-empty
value.  `BACKEND` records which one was picked.
"""

import os

from . import fallback

if os.environ.get("CARLITZ_NO_SPEEDUPS"):
    _impl = fallback
    BACKEND = "fallback (forced)"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "speedups"
    except ImportError:
        _impl = fallback
        BACKEND = "fallback"

add = _impl.add
sub = _impl.sub
neg = _impl.neg
mul = _impl.mul
divmod_ = _impl.divmod_


def backends():
    """Return the available kernel implementations, keyed by name."""
    out = {"fallback": fallback}
    try:
        from . import _speedups

        out["speedups"] = _speedups
    except ImportError:
        pass
    return out
