"""Kernel backend selection.

The hot numeric loops ship in two interchangeable implementations: numba
@njit kernels (`_kernels_numba`, default when numba imports) and a
pure-numpy fallback (`_kernels_numpy`).  Set ANNEAL_LRT_BACKEND=numpy or
=numba to force a lane; selection happens once at import time.
"""

import os

_ENV_VAR = "ANNEAL_LRT_BACKEND"

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

_requested = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"

if _requested == "numpy":
    USE_NUMBA = False
elif _requested == "numba":
    if not HAS_NUMBA:
        raise ImportError(f"{_ENV_VAR}=numba was requested but numba is not importable")
    USE_NUMBA = True
elif _requested == "auto":
    USE_NUMBA = HAS_NUMBA
else:
    raise ValueError(
        f"{_ENV_VAR} must be one of 'numba', 'numpy', 'auto'; got {_requested!r}"
    )

if USE_NUMBA:
    from . import _kernels_numba as kernels
else:
    from . import _kernels_numpy as kernels

BACKEND = "numba" if USE_NUMBA else "numpy"

__all__ = ["BACKEND", "HAS_NUMBA", "USE_NUMBA", "kernels"]
