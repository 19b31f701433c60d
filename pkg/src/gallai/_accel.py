"""JIT switch for the numeric kernels.

Kernels are written in the numba-compatible subset of Python.  When numba is
importable and ``GALLAI_NO_JIT`` is unset (or ``0``), they are compiled with
``numba.njit``; otherwise the very same functions run as plain Python over
numpy arrays.
"""
from __future__ import annotations

import os

_flag = os.environ.get("GALLAI_NO_JIT", "0").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    import numba as _numba
    HAVE_NUMBA = True
except ImportError:
    _numba = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise."""
    kwargs.setdefault("cache", True)
    if HAVE_NUMBA:
        return _numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]):
        return args[0]
    return lambda fn: fn


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
