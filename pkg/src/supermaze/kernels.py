"""Backend selection for the routing kernels.

The compiled ``_ckernels`` extension is used when importable; otherwise the
pure-Python ``_kernels_py`` module. Set ``SUPERMAZE_PURE_PYTHON=1`` to force
the fallback. Both backends produce identical results.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SUPERMAZE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

pareto_labels = _impl.pareto_labels
floyd_warshall = _impl.floyd_warshall


def available_backends() -> dict:
    out = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
