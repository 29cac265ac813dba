"""Pure-Python batch kernels (numpy-vectorized over the batch axis).

Same contract as the compiled ``_kernels`` extension: each kernel takes an
(N, k, n) float64 array and returns ``(centers, values, status)`` with
status 0 ok, 1 degenerate, 2 non-finite.  Failed rows are zero-filled.
Arithmetic follows the compiled kernels' operation order.
"""
import functools

import numpy as np

EPS_DEG = 1e-12
SINGULAR_RTOL = 1e-13

OK, DEGENERATE, NONFINITE = 0, 1, 2


def _quiet(fn):
    # non-finite intermediates are reported through status codes
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with np.errstate(all="ignore"):
            return fn(*args, **kwargs)

    return wrapper


def _check(arr, k, n, name):
    a = np.ascontiguousarray(arr, dtype=np.float64)
    if a.ndim != 3 or (k is not None and a.shape[1] != k) or (n is not None and a.shape[2] != n):
        raise ValueError(f"{name}: unexpected input shape {a.shape}")
    return a


def _finish(centers, r2, ok, radius, out=None):
    status = np.where(ok, OK, DEGENERATE).astype(np.int8)
    finite = np.isfinite(r2) & np.all(np.isfinite(centers), axis=1)
    status[ok & ~finite] = NONFINITE
    good = status == OK
    centers = np.where(good[:, None], centers, 0.0)
    r2 = np.where(good, r2, 0.0)
    vals = np.sqrt(r2) if radius else r2
    if out is None:
        return centers, vals, status
    for buf, src in zip(out, (centers, vals, status)):
        if buf.shape != src.shape:
            raise ValueError("output buffers do not match the batch shape")
        np.copyto(buf, src)
    return out


@_quiet
def standard3(tri, radius=False, out=None):
    t = _check(tri, 3, 3, "standard3")
    C = t[:, 2]
    a = t[:, 0] - C
    b = t[:, 1] - C
    a0, a1, a2 = a.T
    b0, b1, b2 = b.T
    aa = a0 * a0 + a1 * a1 + a2 * a2
    bb = b0 * b0 + b1 * b1 + b2 * b2
    n0 = a1 * b2 - a2 * b1
    n1 = a2 * b0 - a0 * b2
    n2 = a0 * b1 - a1 * b0
    nn = n0 * n0 + n1 * n1 + n2 * n2
    ok = nn > EPS_DEG * (aa * bb)
    u0 = aa * b0 - bb * a0
    u1 = aa * b1 - bb * a1
    u2 = aa * b2 - bb * a2
    inv = 1.0 / (2.0 * nn)
    centers = np.stack([
        C[:, 0] + (u1 * n2 - u2 * n1) * inv,
        C[:, 1] + (u2 * n0 - u0 * n2) * inv,
        C[:, 2] + (u0 * n1 - u1 * n0) * inv,
    ], axis=1)
    d0, d1, d2 = a0 - b0, a1 - b1, a2 - b2
    r2 = aa * bb * (d0 * d0 + d1 * d1 + d2 * d2) / (4.0 * nn)
    return _finish(centers, r2, ok, radius, out)


@_quiet
def projective3(tri, radius=False, out=None):
    t = _check(tri, 3, 3, "projective3")
    C = t[:, 2]
    a = t[:, 0] - C
    b = t[:, 1] - C
    a0, a1, a2 = a.T
    b0, b1, b2 = b.T
    n0 = a1 * b2 - a2 * b1
    n1 = a2 * b0 - a0 * b2
    n2 = a0 * b1 - a1 * b0
    nn = n0 * n0 + n1 * n1 + n2 * n2
    da = -0.5 * (a0 * a0 + a1 * a1 + a2 * a2)
    db = -0.5 * (b0 * b0 + b1 * b1 + b2 * b2)
    ok = nn > EPS_DEG * (4.0 * da * db)
    D03 = a0 * db - da * b0
    D13 = a1 * db - da * b1
    D23 = a2 * db - da * b2
    q0 = n2 * D13 - n1 * D23
    q1 = n0 * D23 - n2 * D03
    q2 = n1 * D03 - n0 * D13
    inv = 1.0 / nn
    centers = np.stack([C[:, 0] + q0 * inv, C[:, 1] + q1 * inv, C[:, 2] + q2 * inv], axis=1)
    r2 = (q0 * q0 + q1 * q1 + q2 * q2) * (inv * inv)
    return _finish(centers, r2, ok, radius, out)


@_quiet
def tetra_closed(tet, radius=False, out=None):
    t = _check(tet, 4, 3, "tetra_closed")
    V0 = t[:, 0]
    X1, Y1, Z1 = (t[:, 1] - V0).T
    X2, Y2, Z2 = (t[:, 2] - V0).T
    X3, Y3, Z3 = (t[:, 3] - V0).T
    L1 = X1 * X1 + Y1 * Y1 + Z1 * Z1
    L2 = X2 * X2 + Y2 * Y2 + Z2 * Z2
    L3 = X3 * X3 + Y3 * Y3 + Z3 * Z3
    det6 = X1 * (Y2 * Z3 - Z2 * Y3) - Y1 * (X2 * Z3 - Z2 * X3) + Z1 * (X2 * Y3 - Y2 * X3)
    ok = det6 * det6 > EPS_DEG * (L1 * L2 * L3)
    k = 1.0 / (2.0 * det6)
    x = k * ((Y2 * Z3 - Y3 * Z2) * L1 - (Y1 * Z3 - Y3 * Z1) * L2 + (Y1 * Z2 - Y2 * Z1) * L3)
    y = k * (-(X2 * Z3 - X3 * Z2) * L1 + (X1 * Z3 - X3 * Z1) * L2 - (X1 * Z2 - X2 * Z1) * L3)
    z = k * ((X2 * Y3 - X3 * Y2) * L1 - (X1 * Y3 - X3 * Y1) * L2 + (X1 * Y2 - X2 * Y1) * L3)
    centers = np.stack([V0[:, 0] + x, V0[:, 1] + y, V0[:, 2] + z], axis=1)
    return _finish(centers, x * x + y * y + z * z, ok, radius, out)


def _lu_det_batch(a):
    """Determinants of a stack of square matrices, (N, m, m) -> (N,); ``a`` is destroyed."""
    N, m, _ = a.shape
    d = np.ones(N)
    rows = np.arange(N)
    for k in range(m):
        p = k + np.argmax(np.abs(a[:, k:, k]), axis=1)
        swap = p != k
        if np.any(swap):
            top = a[rows, k].copy()
            a[rows, k] = a[rows, p]
            a[rows, p] = top
            d = np.where(swap, -d, d)
        piv = a[:, k, k]
        d = d * piv
        if k + 1 < m:
            safe = np.where(piv == 0.0, 1.0, piv)
            f = a[:, k + 1:, k] / safe[:, None]
            a[:, k + 1:, k + 1:] -= f[:, :, None] * a[:, k, None, k + 1:]
    return d


def _minor_dets(rows, skip):
    """Determinant of each (m, m+1) row block with column ``skip`` removed."""
    return _lu_det_batch(np.ascontiguousarray(np.delete(rows, skip, axis=2)))


@_quiet
def linear_nd(simp, radius=False, out=None):
    s = _check(simp, None, None, "linear_nd")
    N, k, n = s.shape
    if k != n + 1:
        raise ValueError("linear_nd expects an (N, n+1, n) array")
    e = s[:, 1:] - s[:, :1]
    a = 2.0 * e
    b = np.einsum("ijk,ijk->ij", e, e)
    thresh = SINGULAR_RTOL * np.sqrt(np.max(np.einsum("ijk,ijk->ij", a, a), axis=1))
    ok = np.ones(N, dtype=bool)
    rows = np.arange(N)
    for kk in range(n):
        p = kk + np.argmax(np.abs(a[:, kk:, kk]), axis=1)
        best = np.abs(a[rows, p, kk])
        ok &= best > thresh
        top = a[rows, kk].copy()
        a[rows, kk] = a[rows, p]
        a[rows, p] = top
        tb = b[rows, kk].copy()
        b[rows, kk] = b[rows, p]
        b[rows, p] = tb
        piv = np.where(ok, a[:, kk, kk], 1.0)
        f = a[:, kk + 1:, kk] / piv[:, None]
        a[:, kk + 1:, kk:] -= f[:, :, None] * a[:, kk, None, kk:]
        b[:, kk + 1:] -= f * b[:, kk, None]
    x = np.empty((N, n))
    for r in range(n - 1, -1, -1):
        acc = b[:, r].copy()
        for c in range(r + 1, n):
            acc -= a[:, r, c] * x[:, c]
        x[:, r] = acc / np.where(ok, a[:, r, r], 1.0)
    r2 = np.zeros(N)
    for c in range(n):
        r2 += x[:, c] * x[:, c]
    return _finish(s[:, 0] + x, r2, ok, radius, out)


@_quiet
def facet_nd(simp, radius=False, out=None):
    s = _check(simp, None, None, "facet_nd")
    N, k, n = s.shape
    if k != n or n < 2:
        raise ValueError("facet_nd expects an (N, n, n) array with n >= 2")
    e = s[:, 1:] - s[:, :1]
    ee = np.zeros((N, n - 1))
    for c in range(n):
        ee += e[:, :, c] * e[:, :, c]
    scale = np.prod(ee, axis=1)
    normal = np.empty((N, n))
    sgn = 1.0
    for c in range(n):
        normal[:, c] = sgn * _minor_dets(e, c)
        sgn = -sgn
    nn = np.zeros(N)
    for c in range(n):
        nn += normal[:, c] * normal[:, c]
    ok = nn > EPS_DEG * scale
    planes = np.zeros((N, n, n + 1))
    planes[:, : n - 1, :n] = e
    planes[:, : n - 1, n] = -0.5 * ee
    planes[:, n - 1, :n] = normal
    q = np.empty((N, n + 1))
    sgn = -1.0
    for c in range(n + 1):
        q[:, c] = sgn * _minor_dets(planes, c)
        sgn = -sgn
    w = q[:, n]
    ok &= w != 0.0
    centers = s[:, 0] + q[:, :n] / w[:, None]
    r2 = np.zeros(N)
    for c in range(n):
        r2 += q[:, c] * q[:, c]
    return _finish(centers, r2 / (w * w), ok, radius, out)
