import itertools
import math

import numpy as np
import pytest


def leibniz_det(m):
    """Brute-force determinant as a signed sum over permutations."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    total = 0.0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1.0
        for i, p in enumerate(perm):
            prod *= m[i, p]
        total += (-1) ** inversions * prod
    return total


def brute_cross(rows):
    """Extended cross product by explicit cofactors of the symbolic first row."""
    rows = np.asarray(rows, dtype=float)
    m, n1 = rows.shape
    return np.array([(-1) ** j * leibniz_det(np.delete(rows, j, axis=1)) for j in range(n1)])


def regular_simplex(n):
    """n+1 vertices of a unit-edge regular simplex in E^n, by recursive embedding."""
    verts = np.array([[0.0], [1.0]])
    for m in range(1, n):
        verts = np.hstack([verts, np.zeros((verts.shape[0], 1))])
        c = verts.mean(axis=0)
        h2 = 1.0 - float(np.sum((verts[0] - c) ** 2))
        apex = c.copy()
        apex[-1] = math.sqrt(h2)
        verts = np.vstack([verts, apex])
    return verts


def random_rotation(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def gram(edges):
    e = np.asarray(edges, dtype=float)
    g = e @ e.T
    return np.linalg.det(g) / np.prod(np.diag(g))


def random_simplices(rng, count, k, n, min_ratio=1e-6):
    out = []
    while len(out) < count:
        v = rng.uniform(-1, 1, size=(k, n))
        if gram(v[1:] - v[0]) >= min_ratio:
            out.append(v)
    return np.array(out)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, title, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} | {detail}"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
