"""Backend selection for the hot kernels.

Set ``DKPO_DISABLE_NUMBA=1`` to force the pure-numpy path. The numpy path is
also used automatically when numba cannot be imported.
"""
import os

_FLAG = os.environ.get("DKPO_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise identity.

    Kernels are always compiled if numba is importable, so the benchmark can
    compare both paths regardless of the env flag.
    """
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)
