"""Optional numba acceleration.

Set ``XCONC_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when numba
is importable.  The jitted variants stay importable either way so the
benchmark can compare both paths in one process.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("XCONC_DISABLE_NUMBA", "").strip().lower() in (
    "",
    "0",
    "false",
    "no",
)


def njit(func):
    """``numba.njit(cache=True)`` when numba is installed, identity otherwise."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
