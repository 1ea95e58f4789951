"""Backend selection for the hot kernels.

The compiled extension is used when importable; set
``HYBRID_BELL_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

from . import _pykernels

try:
    if os.environ.get("HYBRID_BELL_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

ONOFF = _pykernels.ONOFF
PARITY = _pykernels.PARITY
REAL = _pykernels.REAL
IMAG = _pykernels.IMAG
GENERAL = _pykernels.GENERAL

expectation = _impl.expectation
bell_general = _impl.bell_general
bell_regime = _impl.bell_regime
nelder_mead_max = _impl.nelder_mead_max


def backends():
    """Return ``{name: module}`` for every importable backend."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["compiled"] = _ckernels
    except ImportError:
        pass
    return out
