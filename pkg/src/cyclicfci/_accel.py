"""Optional numba acceleration.

Set ``CYCLICFCI_DISABLE_NUMBA=1`` (or run without numba installed) to use the
pure-numpy kernels instead of the jitted ones.
"""

import os

_DISABLED = os.environ.get("CYCLICFCI_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA


def njit(func):
    """Jit-compile ``func`` when numba is active, otherwise return it untouched."""
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)
