"""Backend selection for the accelerated kernels.

Hot loops ship in two functionally identical variants: a numba
``@njit``-compiled scalar-loop version and a vectorized pure-numpy one.
Setting ``ZETAMOMENTS_NO_NUMBA=1`` in the environment forces the numpy
variants (no JIT warm-up, works where numba is unavailable).  The
``bench`` module times the two variants against each other.
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("ZETAMOMENTS_NO_NUMBA", "").strip().lower()
USE_NUMBA = _FLAG not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit  # noqa: F401
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        """Decorator stand-in so ``@njit(...)`` code imports without numba."""
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def set_threads(n: int) -> None:
    """Set the numba threading layer's thread count (no-op on the numpy path)."""
    if USE_NUMBA and n > 0:
        import numba

        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
