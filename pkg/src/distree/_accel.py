"""Numba switch.

Set ``DISTREE_NUMBA=0`` to run every kernel on its pure-numpy / pure-Python
path. The flag is read once at import time.
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("DISTREE_NUMBA", "1").strip().lower()

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

NUMBA_ENABLED = _numba is not None and _FLAG not in ("0", "false", "no", "off")


def njit(func):
    """Compile ``func`` with numba in nopython mode."""
    if _numba is None:  # pragma: no cover
        return func
    return _numba.njit(cache=True)(func)


def pick(fast, slow):
    """Return the numba kernel when enabled, else the fallback."""
    return fast if NUMBA_ENABLED else slow
