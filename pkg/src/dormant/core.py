"""Kernel backend selection.

Imports the compiled kernels when available, otherwise the pure-Python
fallback.  Set DORMANT_NO_EXT=1 to force the fallback (used by the
benchmark and by tests that compare the two backends).
"""

import os

if os.environ.get("DORMANT_NO_EXT"):
    from dormant import _corepure as _impl
else:
    try:
        from dormant import _corefast as _impl  # type: ignore[attr-defined]
    except ImportError:
        from dormant import _corepure as _impl

BACKEND = _impl.BACKEND
poly_mul_mod = _impl.poly_mul_mod
mat_mul_mod = _impl.mat_mul_mod
rref_mod = _impl.rref_mod
kernel_mod = _impl.kernel_mod
