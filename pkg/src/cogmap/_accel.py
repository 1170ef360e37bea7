"""Numba switch.

Hot kernels are decorated with :func:`njit`.  When numba is importable and
``COGMAP_DISABLE_NUMBA`` is unset (or ``0``), they are compiled in nopython
mode with the GIL released; otherwise the decorator is a no-op and the same
source runs as plain Python over numpy arrays.
"""

import os

_FLAG = os.environ.get("COGMAP_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba
except ImportError:
    numba = None

USE_NUMBA = numba is not None

NUMBA_OPTS = {"cache": True, "nogil": True}


def njit(func):
    if USE_NUMBA:
        return numba.njit(func, **NUMBA_OPTS)
    return func


def python_impl(func):
    """The uncompiled Python body of a kernel (identity when numba is off)."""
    return getattr(func, "py_func", func)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
