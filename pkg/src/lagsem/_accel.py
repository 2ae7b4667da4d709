"""Backend selection for the hot numeric kernels.

The loop kernels in :mod:`lagsem._kernels` exist in two flavours: plain
loops meant to be compiled with numba, and vectorized numpy twins.  The
numba path is the default; set the environment variable
``LAGSEM_NO_NUMBA=1`` to force the numpy implementations (they are also
used automatically when numba is not importable).
"""

from __future__ import annotations

import os

ENV_FLAG = "LAGSEM_NO_NUMBA"


def _numba_enabled() -> bool:
    if os.environ.get(ENV_FLAG, "").strip() == "1":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _numba_enabled()
