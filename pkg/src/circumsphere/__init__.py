"""Circumscribed spheres of triangles, tetrahedra and simplices.

Scalar routines live in :mod:`.circumsphere3` (E^3) and :mod:`.nd` (E^n);
batch kernels in :mod:`.kernels`; correctness oracles in :mod:`.oracle`.
"""
from .circumsphere3 import (
    bisector_plane,
    circumsphere3_projective,
    circumsphere3_standard,
    circumsphere_tetrahedron_closed,
    homogeneous_normalize_center,
    simplex_metrics,
    support_plane,
)
from .errors import DegenerateSimplex, DegenerateTriangle, DimensionError, GeometryError, SingularSystem
from .kernels import BACKEND, compute_batch
from .linalg import HomPlane, HomPoint, cross3, cross4, cross_nd, det, solve
from .nd import build_hyperplanes, circumsphere_facet_projective, circumsphere_simplex_linear
from .sphere import EPS_DEG, SimplexMetrics, Sphere, Tetrahedron3, Triangle3

__version__ = "0.1.0"
