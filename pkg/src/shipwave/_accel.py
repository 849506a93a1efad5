"""Optional numba acceleration for the inner kernels.

Every accelerated kernel exists twice: a loop version that numba compiles and a
vectorised numpy version.  ``SHIPWAVE_DISABLE_NUMBA=1`` (or a missing numba)
selects the numpy versions at import time.
"""

from __future__ import annotations

import os

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None

_FLAG = os.environ.get("SHIPWAVE_DISABLE_NUMBA", "").strip().lower()

NUMBA_ENABLED = numba is not None and _FLAG not in {"1", "true", "yes", "on"}


def njit(fn):
    """Compile ``fn`` with ``numba.njit`` when acceleration is enabled.

    When numba is disabled the plain Python function is returned, so the loop
    kernels stay importable (and testable on tiny inputs) everywhere.
    """
    if numba is None or not NUMBA_ENABLED:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
