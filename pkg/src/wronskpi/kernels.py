"""Backend selection for the integer convolution kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module. Set ``WRONSKPI_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os

from wronskpi import _pykernels

BACKEND = "python"
mul_trunc = _pykernels.mul_trunc

if os.environ.get("WRONSKPI_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from wronskpi import _ckernels
    except ImportError:  # extension not built
        _ckernels = None
    else:
        BACKEND = "cython"
        mul_trunc = _ckernels.mul_trunc


def available_backends():
    """Map backend name -> ``mul_trunc`` for every backend that imports."""
    out = {"python": _pykernels.mul_trunc}
    try:
        from wronskpi import _ckernels as ck
    except ImportError:
        return out
    out["cython"] = ck.mul_trunc
    return out
