"""Value types shared by the E^3 and n-D circumsphere routines."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

#: lower bound on the scale-free Gram ratio for a non-degenerate simplex
EPS_DEG = 1e-12


@dataclass(frozen=True)
class Sphere:
    """Euclidean center plus squared radius.

    The square root is deferred to :meth:`radius`; most consumers (bounding
    tests, comparisons) only need ``radius_sq``.
    """

    center: np.ndarray
    radius_sq: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=np.float64)
        r2 = float(self.radius_sq)
        if not np.all(np.isfinite(c)):
            raise ValueError("sphere center must be finite")
        if not (r2 >= 0.0 and math.isfinite(r2)):
            raise ValueError(f"radius_sq must be finite and >= 0, got {r2}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius_sq", r2)

    def radius(self):
        return math.sqrt(self.radius_sq)

    def contains(self, point, rtol=1e-12):
        d = np.asarray(point, dtype=np.float64) - self.center
        return float(d @ d) <= self.radius_sq * (1.0 + rtol)


class Triangle3(NamedTuple):
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray


class Tetrahedron3(NamedTuple):
    V0: np.ndarray
    V1: np.ndarray
    V2: np.ndarray
    V3: np.ndarray


@dataclass(frozen=True)
class SimplexMetrics:
    """Squared edge lengths from vertex 0, plus the signed volume for tetrahedra."""

    edge_lengths_sq: tuple
    volume: float | None = None


def gram_ratio(edges):
    """Scale-free conditioning ``det(E E^T) / prod |e_i|^2`` of the edge rows.

    1 for mutually orthogonal edges, 0 for linearly dependent ones.  For two
    edges in E^3 this is ``|a x b|^2 / (|a|^2 |b|^2)``.
    """
    e = np.asarray(edges, dtype=np.float64)
    g = e @ e.T
    diag = np.prod(np.diag(g))
    if diag == 0.0:
        return 0.0
    return max(float(np.linalg.det(g)) / float(diag), 0.0)
