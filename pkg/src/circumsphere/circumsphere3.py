"""Circumscribed spheres in E^3.

Three independent routes:

* :func:`circumsphere3_standard` - the textbook vector formula for a triangle.
* :func:`circumsphere3_projective` - intersection of the two edge bisector
  planes with the triangle's own plane, computed as a 4D extended cross
  product in homogeneous coordinates.
* :func:`circumsphere_tetrahedron_closed` - cofactor closed form for a
  tetrahedron.

All of them translate the privileged vertex (``C`` for triangles, ``V0`` for
tetrahedra) to the origin first and return a :class:`~circumsphere.sphere.Sphere`
holding r^2.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateSimplex, DegenerateTriangle, DimensionError
from .linalg import HomPlane, HomPoint, cross3, cross4, det3, dot, vec
from .sphere import EPS_DEG, SimplexMetrics, Sphere, Tetrahedron3, Triangle3

__all__ = [
    "bisector_plane",
    "support_plane",
    "circumsphere3_standard",
    "circumsphere3_projective",
    "projective_homogeneous",
    "homogeneous_normalize_center",
    "translate_homogeneous",
    "weight_identity_error",
    "circumsphere_tetrahedron_closed",
    "simplex_metrics",
]


def _triangle(t):
    if len(t) != 3:
        raise DimensionError(f"a triangle has 3 vertices, got {len(t)}")
    return Triangle3(*(vec(v, 3) for v in t))


def _tetrahedron(t):
    if len(t) != 4:
        raise DimensionError(f"a tetrahedron has 4 vertices, got {len(t)}")
    return Tetrahedron3(*(vec(v, 3) for v in t))


def _cross_ratio(aa, bb, nn):
    denom = aa * bb
    return nn / denom if denom > 0.0 else 0.0


def circumsphere3_standard(t):
    """Circumsphere of a triangle by the vector formula.

    With ``a = A - C`` and ``b = B - C``::

        Q  = C + ((|a|^2 b - |b|^2 a) x (a x b)) / (2 |a x b|^2)
        r2 = |a|^2 |b|^2 |a - b|^2 / (4 |a x b|^2)

    Raises
    ------
    DegenerateTriangle
        If ``|a x b|^2 / (|a|^2 |b|^2) <= EPS_DEG``.
    """
    A, B, C = _triangle(t)
    a = A - C
    b = B - C
    aa = dot(a, a)
    bb = dot(b, b)
    n = cross3(a, b)
    nn = dot(n, n)
    ratio = _cross_ratio(aa, bb, nn)
    if not ratio > EPS_DEG:
        raise DegenerateTriangle(ratio)
    amb = a - b
    offset = cross3(aa * b - bb * a, n) / (2.0 * nn)
    r2 = aa * bb * dot(amb, amb) / (4.0 * nn)
    return Sphere(C + offset, r2)


def bisector_plane(edge):
    """Plane ``[edge : -(edge . edge) / 2]`` bisecting the segment from the origin to ``edge``."""
    e = vec(edge)
    ee = dot(e, e)
    if ee == 0.0:
        raise DegenerateTriangle(0.0, "zero-length edge has no bisector plane")
    return HomPlane(e, -0.5 * ee)


def support_plane(a, b):
    """Plane ``[a x b : 0]`` through the origin spanned by edges ``a`` and ``b``."""
    a = vec(a, 3)
    b = vec(b, 3)
    n = cross3(a, b)
    ratio = _cross_ratio(dot(a, a), dot(b, b), dot(n, n))
    if not ratio > EPS_DEG:
        raise DegenerateTriangle(ratio)
    return HomPlane(n, 0.0)


def weight_identity_error(q, nn):
    """Relative deviation ``|q_w - |a x b|^2| / |a x b|^2`` of the homogeneous weight."""
    return abs(q.w - nn) / nn


def projective_homogeneous(t):
    """Homogeneous circumcenter offset ``Q'`` of triangle ``t`` relative to ``C``.

    ``Q'`` is the extended cross product of the bisector planes of ``a`` and
    ``b`` and the support plane ``[a x b : 0]``.  The cofactor expansion gives
    a weight of ``-|a x b|^2``; the tuple is negated (same projective point)
    so that ``q_w = +|a x b|^2``.

    Returns ``(Q', |a x b|^2)``.
    """
    A, B, C = _triangle(t)
    a = A - C
    b = B - C
    n = cross3(a, b)
    nn = dot(n, n)
    ratio = _cross_ratio(dot(a, a), dot(b, b), nn)
    if not ratio > EPS_DEG:
        raise DegenerateTriangle(ratio)
    rho_a = bisector_plane(a)
    rho_b = bisector_plane(b)
    rho_0 = HomPlane(n, 0.0)
    q = cross4(rho_a, rho_b, rho_0)
    q = HomPoint(-q.coords, -q.w)
    # weight is a triple product; its rounding error grows like 1/sqrt(ratio)
    assert weight_identity_error(q, nn) <= 64 * np.finfo(float).eps / math.sqrt(ratio), (q.w, nn)
    return q, nn


def homogeneous_normalize_center(q, origin):
    """Convert the homogeneous offset ``q`` about ``origin`` to a :class:`Sphere`.

    ``center = origin + q.coords / q.w`` and ``r2 = |q.coords|^2 / q.w^2``.
    """
    if q.w == 0.0 or not math.isfinite(q.w):
        raise DegenerateSimplex(q.w, "homogeneous center is at infinity")
    offset = q.coords / q.w
    r2 = dot(q.coords, q.coords) / (q.w * q.w)
    return Sphere(np.asarray(origin, dtype=np.float64) + offset, r2)


def translate_homogeneous(q, origin):
    """Apply the translation by ``origin`` to a homogeneous point: ``[x + w*origin : w]``."""
    return HomPoint(q.coords + q.w * np.asarray(origin, dtype=np.float64), q.w)


def circumsphere3_projective(t):
    """Circumsphere of a triangle by plane intersection in homogeneous coordinates.

    Raises
    ------
    DegenerateTriangle
        Same scale-free test as :func:`circumsphere3_standard`.
    """
    tri = _triangle(t)
    q, _ = projective_homogeneous(tri)
    return homogeneous_normalize_center(q, tri.C)


def simplex_metrics(vertices):
    """Squared edge lengths ``|V_i - V_0|^2`` and, for a tetrahedron in E^3, the signed volume."""
    v = np.array(vertices, dtype=np.float64)
    if v.ndim != 2 or v.shape[0] < 2:
        raise DimensionError("need at least two vertices")
    edges = v[1:] - v[0]
    lengths = tuple(dot(e, e) for e in edges)
    volume = None
    if v.shape == (4, 3):
        volume = det3(edges[0], edges[1], edges[2]) / 6.0
    return SimplexMetrics(lengths, volume)


def circumsphere_tetrahedron_closed(t):
    """Circumsphere of a tetrahedron by the explicit cofactor formulas.

    The offset ``Q - V0`` is ``adj(X) L / (12 D)`` where the rows of ``X`` are
    the edges ``V_i - V0``, ``L`` their squared lengths and ``D`` the signed
    volume.

    Raises
    ------
    DegenerateSimplex
        If ``(6 D)^2 / prod |X_i|^2 <= EPS_DEG`` (coplanar or nearly so).
    """
    V0, V1, V2, V3 = _tetrahedron(t)
    X1, Y1, Z1 = V1 - V0
    X2, Y2, Z2 = V2 - V0
    X3, Y3, Z3 = V3 - V0
    L1 = X1 * X1 + Y1 * Y1 + Z1 * Z1
    L2 = X2 * X2 + Y2 * Y2 + Z2 * Z2
    L3 = X3 * X3 + Y3 * Y3 + Z3 * Z3
    det6 = det3((X1, Y1, Z1), (X2, Y2, Z2), (X3, Y3, Z3))
    denom = L1 * L2 * L3
    ratio = det6 * det6 / denom if denom > 0.0 else 0.0
    if not ratio > EPS_DEG:
        raise DegenerateSimplex(ratio)
    D = det6 / 6.0
    k = 1.0 / (12.0 * D)
    x = k * (+(Y2 * Z3 - Y3 * Z2) * L1 - (Y1 * Z3 - Y3 * Z1) * L2 + (Y1 * Z2 - Y2 * Z1) * L3)
    y = k * (-(X2 * Z3 - X3 * Z2) * L1 + (X1 * Z3 - X3 * Z1) * L2 - (X1 * Z2 - X2 * Z1) * L3)
    z = k * (+(X2 * Y3 - X3 * Y2) * L1 - (X1 * Y3 - X3 * Y1) * L2 + (X1 * Y2 - X2 * Y1) * L3)
    return Sphere(V0 + np.array([x, y, z]), x * x + y * y + z * z)
