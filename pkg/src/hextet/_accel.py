"""Numba on/off switch.

Hot numeric kernels are compiled with numba unless HEXTET_NO_NUMBA is set
(or numba is missing), in which case callers get the pure-numpy fallback
implementations.  `benchmarks/bench_kernels.py` compares the two paths.
"""

from __future__ import annotations

import os

NUMBA_DISABLED = os.environ.get("HEXTET_NO_NUMBA", "") not in ("", "0")

if not NUMBA_DISABLED:
    try:
        from numba import njit as _njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    """numba.njit when enabled, identity decorator otherwise."""
    if HAVE_NUMBA:
        return _njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def wrap(fn):
        return fn

    return wrap
