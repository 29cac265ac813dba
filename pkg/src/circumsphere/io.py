"""Plain-text simplex files: one simplex per line, whitespace-separated
coordinates in vertex-major order, ``#`` starts a comment line."""
from __future__ import annotations

import numpy as np

from .errors import DimensionError


def parse_simplices(text, dim, vertices=None):
    """Parse simplex lines into an (N, k, dim) array.

    ``vertices`` fixes k; otherwise it is inferred from the first line and
    every line must agree.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vals = [float(tok) for tok in line.split()]
        except ValueError as exc:
            raise DimensionError(f"line {lineno}: {exc}") from None
        if len(vals) % dim:
            raise DimensionError(f"line {lineno}: {len(vals)} numbers is not a multiple of dim={dim}")
        k = len(vals) // dim
        if vertices is None:
            vertices = k
        if k != vertices:
            raise DimensionError(f"line {lineno}: expected {vertices} vertices, got {k}")
        rows.append(vals)
    if not rows:
        raise DimensionError("no simplices in input")
    arr = np.array(rows, dtype=np.float64).reshape(len(rows), vertices, dim)
    if not np.all(np.isfinite(arr)):
        raise DimensionError("input contains non-finite coordinates")
    return arr


def read_simplices(path, dim, vertices=None):
    with open(path, encoding="utf-8") as fh:
        return parse_simplices(fh.read(), dim, vertices)


def format_simplices(simplices):
    """Inverse of :func:`parse_simplices`, with round-trip exact float formatting."""
    lines = [" ".join(repr(float(x)) for x in s.ravel()) for s in np.asarray(simplices)]
    return "\n".join(lines) + "\n"
