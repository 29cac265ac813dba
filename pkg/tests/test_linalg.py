import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from circumsphere.errors import DimensionError, SingularSystem
from circumsphere.linalg import (
    HomPlane,
    HomPoint,
    cross3,
    cross4,
    cross_nd,
    det,
    dot,
    lu_factor,
    solve,
    vec,
)
from conftest import brute_cross, leibniz_det

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def test_cross3_examples():
    assert cross3([1, 0, 0], [0, 1, 0]).tolist() == [0, 0, 1]
    assert cross3([1, 2, 3], [1, 2, 3]).tolist() == [0, 0, 0]
    assert cross3([1, 2, 3], [4, 5, 6]).tolist() == [-3, 6, -3]


def test_cross3_rejects_wrong_dimension():
    with pytest.raises(DimensionError):
        cross3([1, 2], [3, 4])


@given(arrays(float, 3, elements=finite), arrays(float, 3, elements=finite))
def test_cross3_anticommutative_and_orthogonal(u, v):
    assert np.array_equal(cross3(u, v), -cross3(v, u))
    w = cross3(u, v)
    tol = 1e-12 * (1 + np.linalg.norm(u) * np.linalg.norm(v)) * max(np.linalg.norm(u), np.linalg.norm(v), 1)
    assert abs(dot(w, u)) <= tol
    assert abs(dot(w, v)) <= tol


def test_cross4_basis():
    e = np.eye(4)
    q = cross4(e[0], e[1], e[2])
    assert isinstance(q, HomPoint)
    assert q.as_array().tolist() == [0, 0, 0, -1]


def test_cross4_repeated_row_is_zero():
    u = [1.0, 2.0, 3.0, 4.0]
    v = [0.5, -1.0, 2.0, 7.0]
    assert not np.any(cross4(u, u, v).as_array())


def test_cross4_accepts_planes():
    p = HomPlane([1.0, 0.0, 0.0], -0.5)
    q = cross4(p, HomPlane([0.0, 1.0, 0.0], -0.5), HomPlane([0.0, 0.0, 1.0], 0.0))
    # intersection of x = 0.5, y = 0.5, z = 0
    assert np.allclose(q.euclidean(), [0.5, 0.5, 0.0])


@given(arrays(float, (3, 4), elements=finite))
def test_cross4_matches_brute_force_and_is_orthogonal(rows):
    q = cross4(*rows).as_array()
    ref = brute_cross(rows)
    scale = np.prod([1 + np.linalg.norm(r) for r in rows])
    assert np.allclose(q, ref, atol=1e-12 * scale, rtol=0)
    for r in rows:
        assert abs(np.dot(q, r)) <= 1e-12 * scale * (1 + np.linalg.norm(r))


def test_cross_nd_reduces_to_cross3_and_cross4(rng):
    assert cross_nd([[1, 0, 0], [0, 1, 0]]).tolist() == [0, 0, 1]
    rows = rng.normal(size=(3, 4))
    assert np.array_equal(cross_nd(rows), cross4(*rows).as_array())
    rows3 = rng.normal(size=(2, 3))
    assert np.array_equal(cross_nd(rows3), cross3(*rows3))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_cross_nd_matches_brute_force(rng, m):
    for _ in range(5):
        rows = rng.normal(size=(m, m + 1))
        got = cross_nd(rows)
        assert np.allclose(got, brute_cross(rows), rtol=1e-11, atol=1e-11)
        for r in rows:
            assert abs(np.dot(got, r)) <= 1e-11 * np.linalg.norm(got) * np.linalg.norm(r) + 1e-13


def test_cross_nd_shape_mismatch():
    with pytest.raises(DimensionError):
        cross_nd(np.ones((3, 3)))


def test_det_examples():
    assert det(np.eye(3)) == 1.0
    assert det([[1, 2, 3], [4, 5, 6], [1, 2, 3]]) == 0.0
    assert det([[1, 2], [3, 4]]) == -2.0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_det_matches_leibniz(rng, n):
    for _ in range(3):
        m = rng.normal(size=(n, n))
        assert det(m) == pytest.approx(leibniz_det(m), rel=1e-11, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_det_row_permutation_sign(rng, n):
    m = rng.normal(size=(n, n))
    perm = rng.permutation(n)
    sign = np.linalg.det(np.eye(n)[perm])
    assert det(m[perm]) == pytest.approx(sign * det(m), rel=1e-12)


def test_det_small_orders_are_bit_reproducible(rng):
    m = rng.normal(size=(4, 4))
    assert det(m) == det(m.copy())


def test_lu_factor_reconstructs(rng):
    m = rng.normal(size=(6, 6))
    lu, perm, _ = lu_factor(m)
    L = np.tril(lu, -1) + np.eye(6)
    U = np.triu(lu)
    assert np.allclose(L @ U, m[perm])


def test_solve_examples():
    b = np.array([3.0, -1.0, 2.0])
    assert np.array_equal(solve(np.eye(3), b), b)
    assert solve(np.diag([2.0, 4.0]), [2.0, 8.0]).tolist() == [1.0, 2.0]


def test_solve_random_residual(rng):
    for _ in range(20):
        m = rng.normal(size=(5, 5))
        rhs = rng.normal(size=5)
        x = solve(m, rhs)
        assert np.linalg.norm(m @ x - rhs) <= 1e-12 * np.linalg.norm(rhs) * np.linalg.cond(m)


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(2, 8))
def test_solve_residual_bound_conditioned(seed, n):
    r = np.random.default_rng(seed)
    u, _ = np.linalg.qr(r.normal(size=(n, n)))
    v, _ = np.linalg.qr(r.normal(size=(n, n)))
    s = np.logspace(0, -r.uniform(0, 6), n)  # condition number <= 1e6
    m = u @ np.diag(s) @ v.T
    rhs = r.normal(size=n)
    x = solve(m, rhs)
    assert np.linalg.norm(m @ x - rhs) <= 1e-10 * np.linalg.norm(m, 2) * np.linalg.norm(x)


def test_solve_singular_reports_pivot():
    with pytest.raises(SingularSystem) as exc:
        solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0])
    assert abs(exc.value.pivot) <= 1e-13 * np.sqrt(20)


def test_solve_singularity_is_scale_relative():
    m = 1e-20 * np.array([[2.0, 1.0], [1.0, 3.0]])
    x = solve(m, [1e-20, 2e-20])
    assert np.allclose(m @ x, [1e-20, 2e-20], rtol=1e-12, atol=0)


def test_vec_validation():
    with pytest.raises(ValueError):
        vec([1.0, float("nan")])
    with pytest.raises(DimensionError):
        vec([1.0])
    with pytest.raises(DimensionError):
        vec([1.0, 2.0], dim=3)


def test_homplane_rejects_zero_normal():
    with pytest.raises(ValueError):
        HomPlane([0.0, 0.0, 0.0], 1.0)
    p = HomPlane([0.0, 2.0, 0.0], -2.0)
    assert p.as_array().tolist() == [0, 2, 0, -2]
    assert p.evaluate([5.0, 1.0, -3.0]) == 0.0


def test_hompoint_at_infinity():
    q = HomPoint([1.0, 2.0, 3.0], 0.0)
    assert not q.is_proper()
    with pytest.raises(ZeroDivisionError):
        q.euclidean()
