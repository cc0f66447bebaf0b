"""Hot inner loops of the Laurent-polynomial arithmetic.

Two interchangeable backends implement the same functions: numba-compiled
loops (``_numba``) and vectorised numpy (``_numpy``).  The backend is picked
once at import time from ``WITTRAM_NUMBA``; both modules stay importable so
tests and the benchmark can compare them directly.
"""

from __future__ import annotations

from .. import _config
from . import _numpy

BACKEND = "numpy"
_impl = _numpy

if _config.numba_requested():
    try:
        from . import _numba
    except ImportError:  # numba missing: stay on numpy
        _numba = None
    else:
        BACKEND = "numba"
        _impl = _numba

sparse_mul = _impl.sparse_mul
sparse_add = _impl.sparse_add

__all__ = ["BACKEND", "sparse_add", "sparse_mul"]
