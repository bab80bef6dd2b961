"""Select the polynomial kernel backend at import time.

The compiled extension is used when it was built; otherwise the pure-Python
module takes over transparently.  Set ``FQZETA_BACKEND=python`` to force the
fallback (handy for benchmarks and for checking that both agree).
"""
import os

_choice = os.environ.get("FQZETA_BACKEND", "auto").lower()

if _choice == "python":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        if _choice == "cython":
            raise
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
add = _impl.add
sub = _impl.sub
neg = _impl.neg
scale = _impl.scale
mul = _impl.mul
divmod_ = _impl.divmod_
gcd = _impl.gcd
monic = _impl.monic
series_div = _impl.series_div
