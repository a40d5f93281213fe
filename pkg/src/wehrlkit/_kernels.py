"""Backend selection for the hot kernels.

The compiled ``_core`` extension is used when it imports; otherwise the
NumPy implementation in ``_core_py``. Set ``WEHRLKIT_PURE_PYTHON=1`` to force
the fallback.
"""
import os

from . import _core_py

if os.environ.get("WEHRLKIT_PURE_PYTHON", "") not in ("", "0"):
    _backend = _core_py
else:
    try:
        from . import _core as _backend
    except ImportError:
        _backend = _core_py

BACKEND = "compiled" if _backend is not _core_py else "python"

laguerre = _backend.laguerre
hermite = _backend.hermite
rakhmanov = _backend.rakhmanov
exp_poly = _backend.exp_poly
neg_xlogx = _backend.neg_xlogx
