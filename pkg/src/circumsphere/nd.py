"""Circumscribed hyperspheres in E^n.

* :func:`circumsphere_simplex_linear` - full simplex (n+1 vertices): solve
  ``2 (V_i - V_0) . (Q - V_0) = |V_i - V_0|^2`` for the center.
* :func:`circumsphere_facet_projective` - n vertices in E^n: intersect the
  n-1 edge bisector hyperplanes with the support hyperplane of the vertices'
  affine hull, via the generalized cross product in n+1 homogeneous
  components.  The center lies in the hull.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circumsphere3 import bisector_plane, homogeneous_normalize_center
from .errors import DegenerateSimplex, DimensionError, SingularSystem
from .linalg import HomPlane, HomPoint, cross_nd, dot, solve
from .sphere import EPS_DEG, Sphere

__all__ = [
    "HyperplaneSet",
    "build_hyperplanes",
    "circumsphere_facet_projective",
    "circumsphere_simplex_linear",
    "facet_homogeneous",
]


def _vertices(vertices):
    v = np.array(vertices, dtype=np.float64)
    if v.ndim != 2 or v.shape[1] < 2:
        raise DimensionError(f"vertices must form a (k, n) array with n >= 2, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vertices must be finite")
    return v


def circumsphere_simplex_linear(vertices):
    """Circumsphere of an n-simplex given as ``n + 1`` vertices in E^n.

    Raises
    ------
    DegenerateSimplex
        When the edge system is singular (flat simplex); chained from the
        solver's :class:`~circumsphere.errors.SingularSystem`.
    """
    v = _vertices(vertices)
    k, n = v.shape
    if k != n + 1:
        raise DimensionError(f"a simplex in E^{n} needs {n + 1} vertices, got {k}")
    edges = v[1:] - v[0]
    m = 2.0 * edges
    rhs = np.array([dot(e, e) for e in edges])
    try:
        offset = solve(m, rhs)
    except SingularSystem as exc:
        raise DegenerateSimplex(exc.pivot, f"degenerate simplex: {exc}") from exc
    return Sphere(v[0] + offset, dot(offset, offset))


@dataclass(frozen=True)
class HyperplaneSet:
    """The n-1 bisector hyperplanes followed by the support hyperplane.

    Planes are expressed with ``origin`` (vertex 0) translated to zero.
    """

    planes: tuple
    origin: np.ndarray
    support_norm_sq: float

    def as_rows(self):
        return np.array([p.as_array() for p in self.planes])


def build_hyperplanes(vertices):
    """Bisector and support hyperplanes for ``n`` vertices in E^n.

    The support normal is the generalized cross product of the ``n - 1``
    edges from vertex 0; its sign is whatever the cofactor expansion gives.

    Raises
    ------
    DegenerateSimplex
        If the edges are (nearly) dependent: ``|N|^2 / prod |e_i|^2 <= EPS_DEG``
        where ``|N|^2`` equals the Gram determinant of the edges.
    """
    v = _vertices(vertices)
    k, n = v.shape
    if k != n:
        raise DimensionError(f"facet construction in E^{n} needs exactly {n} vertices, got {k}")
    edges = v[1:] - v[0]
    normal = cross_nd(edges)
    nn = dot(normal, normal)
    scale = 1.0
    for e in edges:
        scale *= dot(e, e)
    ratio = nn / scale if scale > 0.0 else 0.0
    if not ratio > EPS_DEG:
        raise DegenerateSimplex(ratio)
    planes = tuple(bisector_plane(e) for e in edges) + (HomPlane(normal, 0.0),)
    return HyperplaneSet(planes, v[0], nn)


def facet_homogeneous(vertices):
    """Homogeneous center offset ``Q'`` (relative to vertex 0) of a facet simplex.

    The raw cofactor expansion has weight ``-|N|^2`` in every dimension, so
    the tuple is negated to give a positive weight.
    """
    hs = build_hyperplanes(vertices)
    q = -cross_nd(hs.as_rows())
    return HomPoint(q[:-1], q[-1]), hs


def circumsphere_facet_projective(vertices):
    """Circumsphere of ``n`` points in E^n with its center in their affine hull."""
    q, hs = facet_homogeneous(vertices)
    return homogeneous_normalize_center(q, hs.origin)
