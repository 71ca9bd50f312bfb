"""Numerical kernel backend selection.

The compiled extension (``_fast``, Cython over LAPACK's zheevd and BLAS's
zgemm) is preferred when it imported cleanly; otherwise the numpy
implementations in ``_pure`` are used. Set ``CHANCAP_BACKEND=python`` or
``CHANCAP_BACKEND=compiled`` to force a backend (forcing ``compiled`` raises
if the extension is unavailable).
"""

import os

from . import _pure

_requested = os.environ.get("CHANCAP_BACKEND", "").strip().lower()
if _requested not in ("", "compiled", "python"):
    raise RuntimeError(
        f"CHANCAP_BACKEND={_requested!r} not understood; "
        "use 'compiled' or 'python'"
    )

if _requested == "python":
    _impl = _pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = _pure

BACKEND = _impl.BACKEND_NAME

entropy_bits = _impl.entropy_bits
log2_hermitian = _impl.log2_hermitian
exp_normalized = _impl.exp_normalized
apply_kraus = _impl.apply_kraus
apply_kraus_adjoint = _impl.apply_kraus_adjoint

__all__ = [
    "BACKEND",
    "entropy_bits",
    "log2_hermitian",
    "exp_normalized",
    "apply_kraus",
    "apply_kraus_adjoint",
]
