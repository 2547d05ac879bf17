"""Selects the kernel implementation at import time.

The compiled Cython module is preferred; the pure-Python twin is used when it
is missing or when ``SPECTRAL_PHASE_PURE`` is set in the environment.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

AVAILABLE = {"python": _kernels_py}
if _compiled is not None:
    AVAILABLE["cython"] = _compiled

kernels = _kernels_py if (_compiled is None or os.environ.get("SPECTRAL_PHASE_PURE")) else _compiled


def backend_name() -> str:
    return kernels.BACKEND


def set_backend(name: str) -> str:
    """Switch the active kernels; returns the previous backend name."""
    global kernels
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(AVAILABLE)}")
    previous = kernels.BACKEND
    kernels = AVAILABLE[name]
    return previous
