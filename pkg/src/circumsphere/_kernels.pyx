# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels.

Every kernel takes a C-contiguous float64 array of simplices, shape
(N, k, n), and returns ``(centers, values, status)``:

* ``centers`` (N, n) float64, Euclidean circumcenters
* ``values`` (N,) float64, r^2, or r when ``radius`` is true
* ``status`` (N,) int8: 0 ok, 1 degenerate, 2 non-finite result

``out`` may pass preallocated ``(centers, values, status)`` buffers, which
are overwritten and returned.

Failed rows are zero-filled.  The pure-Python module ``_kernels_py``
implements the same contract with identical operation order.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, isfinite
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double EPS_DEG = 1e-12
cdef double SINGULAR_RTOL = 1e-13

cdef enum:
    OK = 0
    DEGENERATE = 1
    NONFINITE = 2


cdef inline bint _finish(double[:, ::1] centers, double[::1] vals, signed char[::1] status,
                         Py_ssize_t i, Py_ssize_t n, double r2, bint radius) noexcept nogil:
    cdef Py_ssize_t j
    cdef bint good = isfinite(r2)
    for j in range(n):
        good = good and isfinite(centers[i, j])
    if not good:
        for j in range(n):
            centers[i, j] = 0.0
        vals[i] = 0.0
        status[i] = NONFINITE
        return False
    vals[i] = sqrt(r2) if radius else r2
    status[i] = OK
    return True


cdef inline void _fail(double[:, ::1] centers, double[::1] vals, signed char[::1] status,
                       Py_ssize_t i, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(n):
        centers[i, j] = 0.0
    vals[i] = 0.0
    status[i] = DEGENERATE


def _alloc(Py_ssize_t count, Py_ssize_t n, out):
    if out is None:
        return (np.zeros((count, n)), np.zeros(count), np.zeros(count, dtype=np.int8))
    c, v, st = out
    if c.shape != (count, n) or v.shape != (count,) or st.shape != (count,):
        raise ValueError("output buffers do not match the batch shape")
    return c, v, st


def standard3(double[:, :, ::1] tri, bint radius=False, out=None):
    cdef Py_ssize_t N = tri.shape[0], i
    if tri.shape[1] != 3 or tri.shape[2] != 3:
        raise ValueError("standard3 expects an (N, 3, 3) array")
    out_c, out_v, out_s = _alloc(N, 3, out)
    cdef double[:, ::1] centers = out_c
    cdef double[::1] vals = out_v
    cdef signed char[::1] status = out_s
    cdef double a0, a1, a2, b0, b1, b2, aa, bb, n0, n1, n2, nn, u0, u1, u2, inv, d0, d1, d2, r2
    with nogil:
        for i in range(N):
            a0 = tri[i, 0, 0] - tri[i, 2, 0]
            a1 = tri[i, 0, 1] - tri[i, 2, 1]
            a2 = tri[i, 0, 2] - tri[i, 2, 2]
            b0 = tri[i, 1, 0] - tri[i, 2, 0]
            b1 = tri[i, 1, 1] - tri[i, 2, 1]
            b2 = tri[i, 1, 2] - tri[i, 2, 2]
            aa = a0 * a0 + a1 * a1 + a2 * a2
            bb = b0 * b0 + b1 * b1 + b2 * b2
            n0 = a1 * b2 - a2 * b1
            n1 = a2 * b0 - a0 * b2
            n2 = a0 * b1 - a1 * b0
            nn = n0 * n0 + n1 * n1 + n2 * n2
            if not (nn > EPS_DEG * (aa * bb)):
                _fail(centers, vals, status, i, 3)
                continue
            u0 = aa * b0 - bb * a0
            u1 = aa * b1 - bb * a1
            u2 = aa * b2 - bb * a2
            inv = 1.0 / (2.0 * nn)
            centers[i, 0] = tri[i, 2, 0] + (u1 * n2 - u2 * n1) * inv
            centers[i, 1] = tri[i, 2, 1] + (u2 * n0 - u0 * n2) * inv
            centers[i, 2] = tri[i, 2, 2] + (u0 * n1 - u1 * n0) * inv
            d0 = a0 - b0
            d1 = a1 - b1
            d2 = a2 - b2
            r2 = aa * bb * (d0 * d0 + d1 * d1 + d2 * d2) / (4.0 * nn)
            _finish(centers, vals, status, i, 3, r2, radius)
    return out_c, out_v, out_s


def projective3(double[:, :, ::1] tri, bint radius=False, out=None):
    cdef Py_ssize_t N = tri.shape[0], i
    if tri.shape[1] != 3 or tri.shape[2] != 3:
        raise ValueError("projective3 expects an (N, 3, 3) array")
    out_c, out_v, out_s = _alloc(N, 3, out)
    cdef double[:, ::1] centers = out_c
    cdef double[::1] vals = out_v
    cdef signed char[::1] status = out_s
    cdef double a0, a1, a2, b0, b1, b2, n0, n1, n2, nn, da, db
    cdef double D03, D13, D23, q0, q1, q2, inv
    with nogil:
        for i in range(N):
            a0 = tri[i, 0, 0] - tri[i, 2, 0]
            a1 = tri[i, 0, 1] - tri[i, 2, 1]
            a2 = tri[i, 0, 2] - tri[i, 2, 2]
            b0 = tri[i, 1, 0] - tri[i, 2, 0]
            b1 = tri[i, 1, 1] - tri[i, 2, 1]
            b2 = tri[i, 1, 2] - tri[i, 2, 2]
            n0 = a1 * b2 - a2 * b1
            n1 = a2 * b0 - a0 * b2
            n2 = a0 * b1 - a1 * b0
            nn = n0 * n0 + n1 * n1 + n2 * n2
            da = -0.5 * (a0 * a0 + a1 * a1 + a2 * a2)
            db = -0.5 * (b0 * b0 + b1 * b1 + b2 * b2)
            if not (nn > EPS_DEG * (4.0 * da * db)):
                _fail(centers, vals, status, i, 3)
                continue
            # 2x2 minors of the two bisector rows against the offset column
            D03 = a0 * db - da * b0
            D13 = a1 * db - da * b1
            D23 = a2 * db - da * b2
            q0 = n2 * D13 - n1 * D23
            q1 = n0 * D23 - n2 * D03
            q2 = n1 * D03 - n0 * D13
            inv = 1.0 / nn
            centers[i, 0] = tri[i, 2, 0] + q0 * inv
            centers[i, 1] = tri[i, 2, 1] + q1 * inv
            centers[i, 2] = tri[i, 2, 2] + q2 * inv
            _finish(centers, vals, status, i, 3, (q0 * q0 + q1 * q1 + q2 * q2) * (inv * inv), radius)
    return out_c, out_v, out_s


def tetra_closed(double[:, :, ::1] tet, bint radius=False, out=None):
    cdef Py_ssize_t N = tet.shape[0], i
    if tet.shape[1] != 4 or tet.shape[2] != 3:
        raise ValueError("tetra_closed expects an (N, 4, 3) array")
    out_c, out_v, out_s = _alloc(N, 3, out)
    cdef double[:, ::1] centers = out_c
    cdef double[::1] vals = out_v
    cdef signed char[::1] status = out_s
    cdef double X1, Y1, Z1, X2, Y2, Z2, X3, Y3, Z3, L1, L2, L3, det6, k, x, y, z
    with nogil:
        for i in range(N):
            X1 = tet[i, 1, 0] - tet[i, 0, 0]
            Y1 = tet[i, 1, 1] - tet[i, 0, 1]
            Z1 = tet[i, 1, 2] - tet[i, 0, 2]
            X2 = tet[i, 2, 0] - tet[i, 0, 0]
            Y2 = tet[i, 2, 1] - tet[i, 0, 1]
            Z2 = tet[i, 2, 2] - tet[i, 0, 2]
            X3 = tet[i, 3, 0] - tet[i, 0, 0]
            Y3 = tet[i, 3, 1] - tet[i, 0, 1]
            Z3 = tet[i, 3, 2] - tet[i, 0, 2]
            L1 = X1 * X1 + Y1 * Y1 + Z1 * Z1
            L2 = X2 * X2 + Y2 * Y2 + Z2 * Z2
            L3 = X3 * X3 + Y3 * Y3 + Z3 * Z3
            det6 = X1 * (Y2 * Z3 - Z2 * Y3) - Y1 * (X2 * Z3 - Z2 * X3) + Z1 * (X2 * Y3 - Y2 * X3)
            if not (det6 * det6 > EPS_DEG * (L1 * L2 * L3)):
                _fail(centers, vals, status, i, 3)
                continue
            k = 1.0 / (2.0 * det6)
            x = k * ((Y2 * Z3 - Y3 * Z2) * L1 - (Y1 * Z3 - Y3 * Z1) * L2 + (Y1 * Z2 - Y2 * Z1) * L3)
            y = k * (-(X2 * Z3 - X3 * Z2) * L1 + (X1 * Z3 - X3 * Z1) * L2 - (X1 * Z2 - X2 * Z1) * L3)
            z = k * ((X2 * Y3 - X3 * Y2) * L1 - (X1 * Y3 - X3 * Y1) * L2 + (X1 * Y2 - X2 * Y1) * L3)
            centers[i, 0] = tet[i, 0, 0] + x
            centers[i, 1] = tet[i, 0, 1] + y
            centers[i, 2] = tet[i, 0, 2] + z
            _finish(centers, vals, status, i, 3, x * x + y * y + z * z, radius)
    return out_c, out_v, out_s


cdef double _lu_det(double* a, Py_ssize_t m) noexcept nogil:
    """Determinant of the row-major m x m matrix in ``a`` (destroyed)."""
    cdef Py_ssize_t k, r, c, p
    cdef double d = 1.0, piv, f, t, best
    for k in range(m):
        p = k
        best = fabs(a[k * m + k])
        for r in range(k + 1, m):
            if fabs(a[r * m + k]) > best:
                best = fabs(a[r * m + k])
                p = r
        if p != k:
            for c in range(m):
                t = a[k * m + c]
                a[k * m + c] = a[p * m + c]
                a[p * m + c] = t
            d = -d
        piv = a[k * m + k]
        d *= piv
        if piv == 0.0:
            return 0.0
        for r in range(k + 1, m):
            f = a[r * m + k] / piv
            for c in range(k + 1, m):
                a[r * m + c] -= f * a[k * m + c]
    return d


cdef double _minor_det(double* rows, Py_ssize_t m, Py_ssize_t skip, double* scratch) noexcept nogil:
    """Determinant of the m x (m+1) row block ``rows`` with column ``skip`` removed."""
    cdef Py_ssize_t r, c, cc
    for r in range(m):
        cc = 0
        for c in range(m + 1):
            if c != skip:
                scratch[r * m + cc] = rows[r * (m + 1) + c]
                cc += 1
    return _lu_det(scratch, m)


def linear_nd(double[:, :, ::1] simp, bint radius=False, out=None):
    cdef Py_ssize_t N = simp.shape[0], k = simp.shape[1], n = simp.shape[2]
    if k != n + 1:
        raise ValueError("linear_nd expects an (N, n+1, n) array")
    out_c, out_v, out_s = _alloc(N, n, out)
    cdef double[:, ::1] centers = out_c
    cdef double[::1] vals = out_v
    cdef signed char[::1] status = out_s
    cdef double* a = <double*> malloc(n * n * sizeof(double))
    cdef double* b = <double*> malloc(n * sizeof(double))
    cdef Py_ssize_t i, r, c, p, kk
    cdef double e, s, rownorm, thresh, piv, f, t, best, r2
    cdef bint singular
    if a == NULL or b == NULL:
        free(a)
        free(b)
        raise MemoryError()
    try:
        with nogil:
            for i in range(N):
                thresh = 0.0
                for r in range(n):
                    s = 0.0
                    rownorm = 0.0
                    for c in range(n):
                        e = simp[i, r + 1, c] - simp[i, 0, c]
                        a[r * n + c] = 2.0 * e
                        s += e * e
                        rownorm += (2.0 * e) * (2.0 * e)
                    b[r] = s
                    if rownorm > thresh:
                        thresh = rownorm
                thresh = SINGULAR_RTOL * sqrt(thresh)
                singular = False
                for kk in range(n):
                    p = kk
                    best = fabs(a[kk * n + kk])
                    for r in range(kk + 1, n):
                        if fabs(a[r * n + kk]) > best:
                            best = fabs(a[r * n + kk])
                            p = r
                    if not (best > thresh):
                        singular = True
                        break
                    if p != kk:
                        for c in range(n):
                            t = a[kk * n + c]
                            a[kk * n + c] = a[p * n + c]
                            a[p * n + c] = t
                        t = b[kk]
                        b[kk] = b[p]
                        b[p] = t
                    piv = a[kk * n + kk]
                    for r in range(kk + 1, n):
                        f = a[r * n + kk] / piv
                        for c in range(kk, n):
                            a[r * n + c] -= f * a[kk * n + c]
                        b[r] -= f * b[kk]
                if singular:
                    _fail(centers, vals, status, i, n)
                    continue
                r2 = 0.0
                for r in range(n - 1, -1, -1):
                    s = b[r]
                    for c in range(r + 1, n):
                        s -= a[r * n + c] * b[c]
                    b[r] = s / a[r * n + r]
                for c in range(n):
                    centers[i, c] = simp[i, 0, c] + b[c]
                    r2 += b[c] * b[c]
                _finish(centers, vals, status, i, n, r2, radius)
    finally:
        free(a)
        free(b)
    return out_c, out_v, out_s


def facet_nd(double[:, :, ::1] simp, bint radius=False, out=None):
    cdef Py_ssize_t N = simp.shape[0], k = simp.shape[1], n = simp.shape[2]
    if k != n or n < 2:
        raise ValueError("facet_nd expects an (N, n, n) array with n >= 2")
    out_c, out_v, out_s = _alloc(N, n, out)
    cdef double[:, ::1] centers = out_c
    cdef double[::1] vals = out_v
    cdef signed char[::1] status = out_s
    # edges: (n-1) x n, planes: n x (n+1), q: n+1
    cdef double* edges = <double*> malloc((n - 1) * n * sizeof(double))
    cdef double* planes = <double*> malloc(n * (n + 1) * sizeof(double))
    cdef double* q = <double*> malloc((n + 1) * sizeof(double))
    cdef double* scratch = <double*> malloc(n * n * sizeof(double))
    cdef Py_ssize_t i, r, c
    cdef double e, s, sgn, nn, scale, w, r2
    if edges == NULL or planes == NULL or q == NULL or scratch == NULL:
        free(edges)
        free(planes)
        free(q)
        free(scratch)
        raise MemoryError()
    try:
        with nogil:
            for i in range(N):
                scale = 1.0
                for r in range(n - 1):
                    s = 0.0
                    for c in range(n):
                        e = simp[i, r + 1, c] - simp[i, 0, c]
                        edges[r * n + c] = e
                        planes[r * (n + 1) + c] = e
                        s += e * e
                    planes[r * (n + 1) + n] = -0.5 * s
                    scale *= s
                # support normal: generalized cross product of the edges
                nn = 0.0
                sgn = 1.0
                for c in range(n):
                    e = sgn * _minor_det(edges, n - 1, c, scratch)
                    planes[(n - 1) * (n + 1) + c] = e
                    nn += e * e
                    sgn = -sgn
                planes[(n - 1) * (n + 1) + n] = 0.0
                if not (nn > EPS_DEG * scale):
                    _fail(centers, vals, status, i, n)
                    continue
                sgn = -1.0
                for c in range(n + 1):
                    q[c] = sgn * _minor_det(planes, n, c, scratch)
                    sgn = -sgn
                w = q[n]
                if w == 0.0:
                    _fail(centers, vals, status, i, n)
                    continue
                r2 = 0.0
                for c in range(n):
                    centers[i, c] = simp[i, 0, c] + q[c] / w
                    r2 += q[c] * q[c]
                _finish(centers, vals, status, i, n, r2 / (w * w), radius)
    finally:
        free(edges)
        free(planes)
        free(q)
        free(scratch)
    return out_c, out_v, out_s
