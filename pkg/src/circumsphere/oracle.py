"""Independent correctness oracles for circumsphere results.

None of these reuse the computation paths they check: side-length and area
formulas, the Cayley-Menger determinant on pairwise distances, and a Gram
system solved by numpy stand apart from the cross-product, cofactor and
elimination routes in the rest of the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSimplex, DegenerateTriangle, DimensionError
from .sphere import EPS_DEG, Sphere

__all__ = [
    "ResidualReport",
    "cayley_menger_matrix",
    "cayley_menger_residual",
    "constrained_lsq_reference",
    "equidistance_residual",
    "equidistance_residual_batch",
    "hull_residual",
    "residual_report",
    "triangle_circumradius_oracle",
]

_TINY = 1e-300


def equidistance_residual(sphere, vertices):
    """``max_i | |Q - V_i|^2 - r^2 | / max(r^2, tiny)``."""
    v = np.atleast_2d(np.asarray(vertices, dtype=np.float64))
    if v.shape[0] < 1:
        raise DimensionError("need at least one vertex")
    d = v - sphere.center
    dist2 = np.einsum("ij,ij->i", d, d)
    return float(np.max(np.abs(dist2 - sphere.radius_sq)) / max(sphere.radius_sq, _TINY))


def equidistance_residual_batch(centers, radius_sq, vertices):
    """Vectorized :func:`equidistance_residual` over a batch.

    ``centers`` is (N, n), ``radius_sq`` (N,), ``vertices`` (N, k, n).
    """
    d = vertices - centers[:, None, :]
    dist2 = np.einsum("ijk,ijk->ij", d, d)
    err = np.max(np.abs(dist2 - radius_sq[:, None]), axis=1)
    return err / np.maximum(radius_sq, _TINY)


def _pairwise_sq(v):
    d = v[:, None, :] - v[None, :, :]
    return np.einsum("ijk,ijk->ij", d, d)


def cayley_menger_matrix(tet, r_sq):
    """Bordered 6x6 distance matrix of the four vertices plus the center.

    Row/column 0 is the border of ones; the last row/column holds the
    squared distance ``r_sq`` from the center to every vertex.
    """
    v = np.asarray(tet, dtype=np.float64)
    if v.shape != (4, 3):
        raise DimensionError(f"expected a (4, 3) tetrahedron, got shape {v.shape}")
    m = np.zeros((6, 6))
    m[0, 1:] = 1.0
    m[1:, 0] = 1.0
    m[1:5, 1:5] = _pairwise_sq(v)
    m[1:5, 5] = r_sq
    m[5, 1:5] = r_sq
    return m


def cayley_menger_residual(tet, r_sq):
    """Scale-free residual of the Cayley-Menger equation at ``r_sq``.

    The 6x6 determinant is affine in ``s = r_sq``:
    ``det(s) = -2 s CM - det(L)`` with ``CM`` the 5x5 Cayley-Menger
    determinant of the tetrahedron (288 V^2) and ``L`` the squared-distance
    matrix.  The residual is ``|det(s)| / |2 s CM|``, i.e. the relative
    deviation of ``s`` from the root of the equation.
    """
    if r_sq < 0:
        raise ValueError("r_sq must be >= 0")
    m = cayley_menger_matrix(tet, r_sq)
    d6 = float(np.linalg.det(m))
    cm5 = float(np.linalg.det(m[:5, :5]))
    scale = abs(2.0 * r_sq * cm5)
    if scale == 0.0:
        return math.inf if d6 != 0.0 else 0.0
    return abs(d6) / scale


def triangle_circumradius_oracle(t):
    """Classical ``r^2 = a^2 b^2 c^2 / (16 K^2)`` from side lengths.

    The area comes from Kahan's stable Heron formula on the sorted sides, so
    the result does not depend on vertex order at all.
    """
    A, B, C = (np.asarray(p, dtype=np.float64) for p in t)
    sq = sorted((float((B - C) @ (B - C)), float((C - A) @ (C - A)), float((A - B) @ (A - B))), reverse=True)
    a, b, c = (math.sqrt(s) for s in sq)
    k16 = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if not k16 > 0.0:
        raise DegenerateTriangle(0.0, "triangle has zero area")
    return sq[0] * sq[1] * sq[2] / k16


def constrained_lsq_reference(vertices):
    """Reference circumsphere with the center restricted to the vertices' affine hull.

    Writes ``Q = V0 + sum_j t_j e_j`` over the edges ``e_j = V_j - V0`` and
    solves the Gram system ``(E E^T) t = diag(E E^T) / 2`` with numpy.
    Works for any 2 <= k <= n + 1 points.
    """
    v = np.asarray(vertices, dtype=np.float64)
    if v.ndim != 2 or not 2 <= v.shape[0] <= v.shape[1] + 1:
        raise DimensionError(f"need 2 <= k <= n+1 points, got shape {v.shape}")
    e = v[1:] - v[0]
    g = e @ e.T
    diag = np.diag(g)
    scale = float(np.prod(diag))
    ratio = float(np.linalg.det(g)) / scale if scale > 0.0 else 0.0
    if not ratio > EPS_DEG:
        raise DegenerateSimplex(ratio)
    t = np.linalg.solve(g, 0.5 * diag)
    offset = e.T @ t
    return Sphere(v[0] + offset, float(offset @ offset))


def hull_residual(point, vertices):
    """Distance from ``point`` to the affine hull of ``vertices``, relative to the hull's size."""
    v = np.asarray(vertices, dtype=np.float64)
    e = v[1:] - v[0]
    rel = np.asarray(point, dtype=np.float64) - v[0]
    coef, *_ = np.linalg.lstsq(e.T, rel, rcond=None)
    resid = rel - e.T @ coef
    size = max(float(np.max(np.linalg.norm(e, axis=1))), _TINY)
    return float(np.linalg.norm(resid)) / size


@dataclass(frozen=True)
class ResidualReport:
    max_equidistance_rel: float
    cayley_menger_rel: float | None = None
    oracle_radius_rel_err: float | None = None
    center_hull_residual: float | None = None


def residual_report(sphere, vertices):
    """Run every oracle that applies to the vertex configuration."""
    v = np.asarray(vertices, dtype=np.float64)
    k, n = v.shape
    cm = oracle_err = hull = None
    if (k, n) == (4, 3):
        cm = cayley_menger_residual(v, sphere.radius_sq)
    if k == 3:
        try:
            r2 = triangle_circumradius_oracle(v) if n == 3 else constrained_lsq_reference(v).radius_sq
            oracle_err = abs(sphere.radius_sq - r2) / r2
        except DegenerateSimplex:
            oracle_err = math.inf
    if k <= n:
        hull = hull_residual(sphere.center, v)
    return ResidualReport(equidistance_residual(sphere, v), cm, oracle_err, hull)
