"""Small dense linear algebra: products, determinants, exterior products, solver.

Vectors are plain 1-D ``float64`` numpy arrays.  Homogeneous hyperplanes and
points get thin wrappers (:class:`HomPlane`, :class:`HomPoint`) so the
normal/offset and coords/weight split stays explicit.

Determinants of order <= 4 use fixed cofactor expansions so the same input
always produces the same bits; larger orders go through LU with partial
pivoting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, SingularSystem

#: pivot |p| <= SINGULAR_RTOL * max row norm flags a singular system
SINGULAR_RTOL = 1e-13


def vec(values, dim=None):
    """Validate and return ``values`` as a finite 1-D float64 vector."""
    v = np.array(values, dtype=np.float64)
    if v.ndim != 1 or v.size < 2:
        raise DimensionError(f"expected a vector with >= 2 components, got shape {v.shape}")
    if dim is not None and v.size != dim:
        raise DimensionError(f"expected {dim} components, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


def dot(u, v):
    """Left-to-right dot product (deterministic summation order)."""
    s = 0.0
    for x, y in zip(u, v):
        s += float(x) * float(y)
    return s


def cross3(u, v):
    """Right-handed cross product of two 3-vectors."""
    if len(u) != 3 or len(v) != 3:
        raise DimensionError("cross3 needs two 3-vectors")
    u0, u1, u2 = float(u[0]), float(u[1]), float(u[2])
    v0, v1, v2 = float(v[0]), float(v[1]), float(v[2])
    return np.array([u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0])


@dataclass(frozen=True)
class HomPlane:
    """Hyperplane ``normal . x + d = 0`` stored as the tuple ``[normal : d]``."""

    normal: np.ndarray
    d: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=np.float64)
        if n.ndim != 1 or not np.all(np.isfinite(n)) or not math.isfinite(self.d):
            raise ValueError("plane coefficients must be a finite vector and offset")
        if not np.any(n):
            raise ValueError("plane normal must be nonzero")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "d", float(self.d))

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=np.float64)
        return cls(arr[:-1], arr[-1])

    def as_array(self):
        return np.append(self.normal, self.d)

    def evaluate(self, x):
        """Signed plane value ``normal . x + d`` at the Euclidean point ``x``."""
        return dot(self.normal, x) + self.d


@dataclass(frozen=True)
class HomPoint:
    """Homogeneous point ``[coords : w]``; Euclidean only when ``w`` is nonzero."""

    coords: np.ndarray
    w: float

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=np.float64))
        object.__setattr__(self, "w", float(self.w))

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=np.float64)
        return cls(arr[:-1], arr[-1])

    def as_array(self):
        return np.append(self.coords, self.w)

    def is_proper(self, threshold=0.0):
        return abs(self.w) > threshold

    def euclidean(self):
        if self.w == 0.0 or not math.isfinite(self.w):
            raise ZeroDivisionError("point at infinity has no Euclidean image")
        return self.coords / self.w


def _hom(x):
    if isinstance(x, (HomPlane, HomPoint)):
        return x.as_array()
    return np.asarray(x, dtype=np.float64)


def as_square(m):
    """Validate ``m`` as a finite square float64 matrix."""
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def det3(r0, r1, r2):
    """3x3 determinant as the triple product ``r0 . (r1 x r2)``."""
    return dot(r0, cross3(r1, r2))


def _det_small(a):
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0]) * float(a[1, 1]) - float(a[0, 1]) * float(a[1, 0])
    if n == 3:
        return det3(a[0], a[1], a[2])
    # n == 4: expansion along the first row, minors as triple products
    s = 0.0
    sign = 1.0
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        minor = a[1:, cols]
        s += sign * float(a[0, j]) * det3(minor[0], minor[1], minor[2])
        sign = -sign
    return s


def lu_factor(m):
    """LU with partial pivoting.

    Returns ``(lu, perm, sign)`` with ``lu`` holding both triangular factors
    in place and ``sign`` the parity of the row permutation.  No singularity
    check is done here.
    """
    a = np.array(m, dtype=np.float64)
    n = a.shape[0]
    perm = np.arange(n)
    sign = 1.0
    for k in range(n - 1):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        piv = a[k, k]
        if piv == 0.0:
            continue
        a[k + 1:, k] /= piv
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return a, perm, sign


def det(m):
    """Determinant of a square matrix.

    Orders 1 to 4 use fixed cofactor formulas; larger matrices use LU with
    partial pivoting.  A singular matrix returns 0 (or a tiny float).
    """
    a = as_square(m)
    if a.shape[0] <= 4:
        return _det_small(a)
    lu, _, sign = lu_factor(a)
    d = sign
    for i in range(a.shape[0]):
        d *= float(lu[i, i])
    return d


def solve(m, rhs):
    """Solve ``m x = rhs`` by Gaussian elimination with partial pivoting.

    Raises
    ------
    SingularSystem
        If a pivot magnitude is at or below ``SINGULAR_RTOL`` times the
        largest row norm of ``m``.
    """
    a = as_square(m)
    b = np.array(rhs, dtype=np.float64)
    n = a.shape[0]
    if b.shape != (n,):
        raise DimensionError(f"rhs has shape {b.shape}, expected ({n},)")
    if not np.all(np.isfinite(b)):
        raise ValueError("rhs must be finite")
    threshold = SINGULAR_RTOL * float(np.max(np.sqrt(np.einsum("ij,ij->i", a, a))))
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = a[p, k]
        if abs(piv) <= threshold:
            raise SingularSystem(piv, threshold)
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        factors = a[k + 1:, k] / piv
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        b[k + 1:] -= factors * b[k]
    x = np.empty(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def cross4(x1, x2, x3):
    """Extended cross product of three homogeneous 4-vectors.

    Formal expansion of the 4x4 determinant whose first row is the symbolic
    basis ``(i, j, k, l)``: component ``j`` is ``(-1)**j`` times the 3x3 minor
    with column ``j`` removed.  The result is orthogonal to all three inputs.
    Inputs may be :class:`HomPlane`, :class:`HomPoint` or plain 4-sequences.
    """
    r1, r2, r3 = _hom(x1), _hom(x2), _hom(x3)
    if r1.shape != (4,) or r2.shape != (4,) or r3.shape != (4,):
        raise DimensionError("cross4 needs three 4-component vectors")
    out = np.empty(4)
    sign = 1.0
    for j, cols in enumerate(([1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2])):
        out[j] = sign * det3(r1[cols], r2[cols], r3[cols])
        sign = -sign
    return HomPoint(out[:3], out[3])


def cross_nd(rows):
    """Generalized cross product of ``m`` vectors in ``m + 1`` dimensions.

    Component ``j`` (0-based) is ``(-1)**j * det(minor_j)`` where ``minor_j``
    drops column ``j``.  Dispatches to :func:`cross3` for m = 2 and to
    :func:`cross4` for m = 3 so the low-dimensional results are identical.
    """
    a = np.array([_hom(r) for r in rows], dtype=np.float64)
    if a.ndim != 2 or a.shape[1] != a.shape[0] + 1:
        raise DimensionError(f"cross_nd needs m vectors of dimension m+1, got shape {a.shape}")
    m = a.shape[0]
    if m == 1:
        return np.array([a[0, 1], -a[0, 0]])
    if m == 2:
        return cross3(a[0], a[1])
    if m == 3:
        return cross4(a[0], a[1], a[2]).as_array()
    out = np.empty(m + 1)
    for j in range(m + 1):
        minor = np.delete(a, j, axis=1)
        out[j] = (-1.0) ** j * det(minor)
    return out
