"""Run every applicable method and oracle over a batch of simplices."""
from __future__ import annotations

import math

import numpy as np

from .circumsphere3 import (
    circumsphere3_projective,
    circumsphere3_standard,
    circumsphere_tetrahedron_closed,
    projective_homogeneous,
    weight_identity_error,
)
from .errors import DegenerateSimplex
from .nd import circumsphere_facet_projective, circumsphere_simplex_linear
from .oracle import (
    cayley_menger_residual,
    constrained_lsq_reference,
    equidistance_residual,
    hull_residual,
    triangle_circumradius_oracle,
)
from .sphere import gram_ratio

#: breach thresholds, applied to well-conditioned inputs only
LIMITS = {
    "equidistance": 1e-8,
    "radius_agreement": 1e-8,
    "center_agreement": 1e-8,
    "oracle_radius": 1e-8,
    "cayley_menger": 1e-8,
    "weight_identity": 1e-10,
    "hull": 1e-8,
}
WELL_CONDITIONED = 1e-6


def methods_for(k, n):
    """Scalar methods applicable to k vertices in E^n, as (name, callable)."""
    out = []
    if (k, n) == (3, 3):
        out += [("standard", circumsphere3_standard), ("projective", circumsphere3_projective)]
        out.append(("facet-projective", lambda v: circumsphere_facet_projective([v[2], v[0], v[1]])))
    if (k, n) == (4, 3):
        out.append(("tetra-closed", circumsphere_tetrahedron_closed))
    if k == n + 1:
        out.append(("linear", circumsphere_simplex_linear))
    if k == n and n != 3:
        out.append(("facet-projective", circumsphere_facet_projective))
    return out


def _center_diff(s1, s2):
    scale = max(1.0, math.sqrt(s1.radius_sq))
    return float(np.max(np.abs(s1.center - s2.center))) / scale


def check_simplex(v):
    """Metrics for one simplex; ``None`` values mean not applicable."""
    k, n = v.shape
    methods = methods_for(k, n)
    if not methods:
        raise ValueError(f"no method handles {k} vertices in E^{n}")
    metrics = {name: None for name in LIMITS}
    spheres = {}
    for name, fn in methods:
        try:
            spheres[name] = fn(v)
        except DegenerateSimplex:
            pass
    cond = gram_ratio(v[1:] - v[0]) if k - 1 <= n else 0.0
    if not spheres:
        return {"status": "degenerate", "conditioning": cond, "metrics": metrics, "methods": {}}
    metrics["equidistance"] = max(equidistance_residual(s, v) for s in spheres.values())
    ref = next(iter(spheres.values()))
    if len(spheres) > 1:
        metrics["radius_agreement"] = max(abs(s.radius_sq - ref.radius_sq) / ref.radius_sq for s in spheres.values())
        metrics["center_agreement"] = max(_center_diff(ref, s) for s in spheres.values())
    try:
        if (k, n) == (3, 3):
            oracle_r2 = triangle_circumradius_oracle(v)
            q, nn = projective_homogeneous(v)
            metrics["weight_identity"] = weight_identity_error(q, nn)
        elif k <= n:
            oracle_r2 = constrained_lsq_reference(v).radius_sq
        else:
            oracle_r2 = None
        if oracle_r2 is not None:
            metrics["oracle_radius"] = max(abs(s.radius_sq - oracle_r2) / oracle_r2 for s in spheres.values())
    except DegenerateSimplex:
        pass
    if (k, n) == (4, 3):
        metrics["cayley_menger"] = max(cayley_menger_residual(v, s.radius_sq) for s in spheres.values())
    if k <= n:
        metrics["hull"] = max(hull_residual(s.center, v) for s in spheres.values())
    return {
        "status": "ok",
        "conditioning": cond,
        "metrics": metrics,
        "methods": {name: {"center": s.center.tolist(), "radius_sq": s.radius_sq} for name, s in spheres.items()},
    }


def verify_batch(simplices):
    """Check a batch; returns ``(summary, per_simplex)``.

    ``summary["breaches"]`` lists (index, metric, value) for well-conditioned
    inputs that exceed :data:`LIMITS`.
    """
    results = []
    breaches = []
    worst = {name: 0.0 for name in LIMITS}
    for i, v in enumerate(np.asarray(simplices, dtype=np.float64)):
        res = check_simplex(v)
        results.append(res)
        if res["status"] != "ok":
            continue
        for name, val in res["metrics"].items():
            if val is None:
                continue
            worst[name] = max(worst[name], val)
            if res["conditioning"] >= WELL_CONDITIONED and not val <= LIMITS[name]:
                breaches.append((i, name, val))
    summary = {
        "count": len(results),
        "ok": sum(r["status"] == "ok" for r in results),
        "degenerate": sum(r["status"] == "degenerate" for r in results),
        "ill_conditioned": sum(r["status"] == "ok" and r["conditioning"] < WELL_CONDITIONED for r in results),
        "worst": worst,
        "limits": LIMITS,
        "breaches": breaches,
    }
    return summary, results
