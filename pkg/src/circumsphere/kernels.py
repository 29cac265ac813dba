"""Batch circumsphere kernels with import-time backend selection.

The compiled Cython extension is used when it imports; otherwise the
numpy-vectorized pure-Python kernels are used.  Set the environment
variable ``CIRCUMSPHERE_BACKEND=python`` to force the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

STATUS_OK, STATUS_DEGENERATE, STATUS_NONFINITE = 0, 1, 2
STATUS_NAMES = {STATUS_DEGENERATE: "degenerate", STATUS_NONFINITE: "nonfinite"}

#: method name -> (kernel function name, vertex count as a function of dim)
METHODS = {
    "standard": ("standard3", lambda dim: 3),
    "projective": ("projective3", lambda dim: 3),
    "tetra-closed": ("tetra_closed", lambda dim: 4),
    "linear": ("linear_nd", lambda dim: dim + 1),
    "facet-projective": ("facet_nd", lambda dim: dim),
}
FIXED_DIM = {"standard": 3, "projective": 3, "tetra-closed": 3}


def available_backends():
    return ["compiled", "python"] if _compiled is not None else ["python"]


def backend_module(name="auto"):
    """Kernel module for ``name`` in {"auto", "compiled", "python"}."""
    if name == "auto":
        name = os.environ.get("CIRCUMSPHERE_BACKEND", "auto")
        if name == "auto":
            name = "compiled" if _compiled is not None else "python"
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not available; rebuild the package")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


BACKEND = "python" if backend_module() is _kernels_py else "compiled"


def vertex_count(method, dim):
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(METHODS)}")
    if method in FIXED_DIM and dim != FIXED_DIM[method]:
        raise ValueError(f"method {method!r} works in E^3 only, got dim={dim}")
    if dim < 2:
        raise ValueError("dim must be >= 2")
    return METHODS[method][1](dim)


def kernel(method, backend="auto"):
    """The batch kernel implementing ``method`` on ``backend``."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(METHODS)}")
    return getattr(backend_module(backend), METHODS[method][0])


def compute_batch(method, simplices, radius=False, backend="auto"):
    """Run ``method`` over an (N, k, n) array of simplices.

    Returns ``(centers, values, status)``; ``values`` holds r^2, or r when
    ``radius`` is true.  Rows with nonzero status are zero-filled.
    """
    s = np.ascontiguousarray(simplices, dtype=np.float64)
    if s.ndim != 3:
        raise ValueError(f"expected an (N, k, n) array, got shape {s.shape}")
    k = vertex_count(method, s.shape[2])
    if s.shape[1] != k:
        raise ValueError(f"method {method!r} in E^{s.shape[2]} needs {k} vertices per simplex, got {s.shape[1]}")
    return kernel(method, backend)(s, bool(radius))
