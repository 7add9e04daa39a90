"""Backend selection for the branch-and-bound kernels.

The compiled extension is used when it imports and the instance fits in
64-bit masks; otherwise the pure-Python kernels run. Set
``RYSERLAB_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("RYSERLAB_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced by RYSERLAB_PURE_PYTHON")
    from . import _kernels_c
except ImportError:
    _kernels_c = None

BACKEND = "cython" if _kernels_c is not None else "python"
MASK_WIDTH = 64


def _pick(n_points: int, n_lines: int, backend: str | None):
    name = backend or BACKEND
    if name == "cython":
        if _kernels_c is None:
            raise RuntimeError("compiled kernels are not available")
        if n_points <= MASK_WIDTH and n_lines <= MASK_WIDTH:
            return _kernels_c
        if backend == "cython":
            raise ValueError("instance exceeds 64 points/lines for the compiled kernel")
    return _kernels_py


def hitting_set(line_masks, point_lines, forced, allowed, limit, first_only=False, backend=None):
    mod = _pick(len(point_lines), len(line_masks), backend)
    return mod.hitting_set(line_masks, point_lines, forced, allowed, limit, first_only)


def packing(line_masks, order, cap, forced, target, n_points, backend=None):
    mod = _pick(n_points, len(line_masks), backend)
    return mod.packing(line_masks, order, cap, forced, target)
