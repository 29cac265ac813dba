"""Input generation, timing harness and CSV/JSON reporting.

Families
--------
uniform
    Vertices i.i.d. in [-1, 1]^dim; simplices whose scale-free Gram ratio is
    below ``MIN_CONDITIONING`` are redrawn (and counted as rejected).
needle
    A well-shaped base simplex with vertex 1 moved to within 10^-e of
    vertex 0, orthogonally to the remaining edges, for e = 1..12 cycling
    over the batch.  For triangles (A, B, C) this clusters A and B so the
    angle at C is ~10^-e.
cap
    The last vertex sits at height 10^-e (times the base size) above the
    centroid of the other vertices: nearly collinear triangles, nearly
    coplanar tetrahedra.

Timing: each method is run over the batch in passes of at least
``min_ops`` operations; after ``warmup`` passes, ``repeats`` timed passes
are taken with methods and r^2/r variants interleaved, and the median and
10th/90th percentiles of ns/op are reported.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels
from .oracle import equidistance_residual_batch

FAMILIES = ("uniform", "needle", "cap")
MIN_CONDITIONING = 1e-6
EXPONENTS = tuple(range(1, 13))
CSV_HEADER = (
    "method", "family", "dim", "count", "seed", "ns_op_median", "ns_op_p10", "ns_op_p90",
    "max_resid", "mean_resid", "failures", "speedup_vs_standard",
)

_sink = 0.0


@dataclass(frozen=True)
class BenchConfig:
    methods: tuple = ("standard", "projective")
    family: str = "uniform"
    count: int = 100_000
    dim: int = 3
    seed: int = 0
    compute_radius: bool = False
    backend: str = "auto"
    min_ops: int = 100_000
    warmup: int = 3
    repeats: int = 9

    def __post_init__(self):
        if isinstance(self.methods, str):
            object.__setattr__(self, "methods", (self.methods,))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            kernels.vertex_count(m, self.dim)
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.repeats < 1 or self.warmup < 0 or self.min_ops < 1:
            raise ValueError("repeats >= 1, warmup >= 0 and min_ops >= 1 required")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class InputBatch:
    simplices: np.ndarray
    exponents: np.ndarray | None = None
    rejected: int = 0


def gram_ratios(simplices, origin=0):
    """Scale-free Gram ratio of the edges from vertex ``origin``, for each simplex in a batch.

    With ``origin=-1`` and triangles this is ``|a x b|^2 / (|a|^2 |b|^2)``
    for ``a = A - C``, ``b = B - C``, the conditioning the E^3 kernels see.
    """
    k = simplices.shape[1]
    origin %= k
    e = np.delete(simplices, origin, axis=1) - simplices[:, origin:origin + 1]
    g = np.einsum("nik,njk->nij", e, e)
    diag = np.prod(np.diagonal(g, axis1=1, axis2=2), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.linalg.det(g) / diag
    return np.where(diag > 0, np.maximum(r, 0.0), 0.0)


def _uniform(rng, count, k, dim):
    out = np.empty((count, k, dim))
    filled = 0
    rejected = 0
    while filled < count:
        need = count - filled
        draw = rng.uniform(-1.0, 1.0, size=(need, k, dim))
        good = draw[gram_ratios(draw) >= MIN_CONDITIONING]
        rejected += need - good.shape[0]
        out[filled:filled + good.shape[0]] = good
        filled += good.shape[0]
    return out, rejected


def _orthogonal_unit(rng, basis, dim):
    """Random unit vector orthogonal to the rows of ``basis``."""
    while True:
        u = rng.normal(size=dim)
        if basis.shape[0]:
            q, _ = np.linalg.qr(basis.T)
            u = u - q @ (q.T @ u)
        norm = np.linalg.norm(u)
        if norm > 1e-3:
            return u / norm


def _well_shaped_base(rng, k, dim):
    while True:
        v = rng.uniform(-1.0, 1.0, size=(1, k, dim))
        e = v[0, 1:] - v[0, 0]
        if gram_ratios(v)[0] >= 1e-2 and np.min(np.linalg.norm(e, axis=1)) >= 0.25:
            return v[0]


def _needle(rng, count, k, dim):
    out = np.empty((count, k, dim))
    exps = np.array([EXPONENTS[i % len(EXPONENTS)] for i in range(count)])
    for i in range(count):
        v = _well_shaped_base(rng, k, dim)
        others = v[2:] - v[0]
        u = _orthogonal_unit(rng, others, dim)
        v[1] = v[0] + 10.0 ** (-exps[i]) * u
        out[i] = v
    return out, exps


def _cap(rng, count, k, dim):
    out = np.empty((count, k, dim))
    exps = np.array([EXPONENTS[i % len(EXPONENTS)] for i in range(count)])
    for i in range(count):
        v = _well_shaped_base(rng, k, dim)
        base = v[:-1]
        edges = base[1:] - base[0]
        size = float(np.mean(np.linalg.norm(edges, axis=1)))
        u = _orthogonal_unit(rng, edges, dim)
        v[-1] = base.mean(axis=0) + 10.0 ** (-exps[i]) * size * u
        out[i] = v
    return out, exps


def generate_inputs(cfg, vertices=None):
    """Deterministic batch of simplices for ``cfg``.

    ``vertices`` defaults to the vertex count required by the first method.
    The stream depends only on (seed, family, vertex count, dim).
    """
    k = vertices or kernels.vertex_count(cfg.methods[0], cfg.dim)
    rng = np.random.default_rng([cfg.seed, FAMILIES.index(cfg.family), k, cfg.dim])
    if cfg.family == "uniform":
        simplices, rejected = _uniform(rng, cfg.count, k, cfg.dim)
        return InputBatch(simplices, None, rejected)
    gen = _needle if cfg.family == "needle" else _cap
    simplices, exps = gen(rng, cfg.count, k, cfg.dim)
    return InputBatch(simplices, exps, 0)


@dataclass
class MethodResult:
    method: str
    family: str
    dim: int
    count: int
    seed: int
    ns_op_median: float | None
    ns_op_p10: float | None
    ns_op_p90: float | None
    max_resid: float | None
    mean_resid: float | None
    failures: int
    speedup_vs_standard: float | None = None
    ns_op_r2_median: float | None = None
    ns_op_r_median: float | None = None
    sqrt_share: float | None = None
    failures_by_type: dict = field(default_factory=dict)
    residual_curve: dict = field(default_factory=dict)

    def csv_row(self):
        return {k: getattr(self, k) for k in CSV_HEADER}


@dataclass
class BenchReport:
    backend: str
    compute_radius: bool
    rejected: int
    results: list

    def to_dict(self):
        return {
            "backend": self.backend,
            "compute_radius": self.compute_radius,
            "rejected": self.rejected,
            "results": [asdict(r) for r in self.results],
        }


def _time_pass(fn, batch, radius, inner, out):
    global _sink
    t0 = time.perf_counter_ns()
    for _ in range(inner):
        fn(batch, radius, out)
    elapsed = time.perf_counter_ns() - t0
    _sink += float(out[1][0])
    return elapsed / (inner * batch.shape[0])


def _residual_stats(batch, centers, values, status):
    ok = status == kernels.STATUS_OK
    resid = np.full(status.shape, np.nan)
    if np.any(ok):
        resid[ok] = equidistance_residual_batch(centers[ok], values[ok], batch.simplices[ok])
    return ok, resid


def run_bench(cfg):
    """Time every method in ``cfg`` and collect residual and failure statistics."""
    batches = {}
    prepared = []
    rejected = 0
    for method in cfg.methods:
        k = kernels.vertex_count(method, cfg.dim)
        if k not in batches:
            batches[k] = generate_inputs(cfg, k)
            rejected += batches[k].rejected
        batch = batches[k]
        fn = kernels.kernel(method, cfg.backend)
        centers, values, status = fn(batch.simplices, False)
        ok, resid = _residual_stats(batch, centers, values, status)
        failures_by_type = {
            name: int(np.sum(status == code)) for code, name in kernels.STATUS_NAMES.items() if np.any(status == code)
        }
        curve = {}
        if batch.exponents is not None:
            for e in EXPONENTS:
                sel = batch.exponents == e
                if not np.any(sel):
                    continue
                good = resid[sel & ok]
                curve[str(e)] = {
                    "max_resid": float(np.max(good)) if good.size else None,
                    "failures": int(np.sum(sel & ~ok)),
                }
        timed = np.ascontiguousarray(batch.simplices[ok])
        result = MethodResult(
            method=method, family=cfg.family, dim=cfg.dim, count=cfg.count, seed=cfg.seed,
            ns_op_median=None, ns_op_p10=None, ns_op_p90=None,
            max_resid=float(np.max(resid[ok])) if np.any(ok) else None,
            mean_resid=float(np.mean(resid[ok])) if np.any(ok) else None,
            failures=int(np.sum(~ok)),
            failures_by_type=failures_by_type,
            residual_curve=curve,
        )
        buffers = (np.zeros((timed.shape[0], cfg.dim)), np.zeros(timed.shape[0]), np.zeros(timed.shape[0], dtype=np.int8))
        prepared.append((result, fn, timed, buffers))

    samples = {(i, r): [] for i in range(len(prepared)) for r in (False, True)}
    for rep in range(cfg.warmup + cfg.repeats):
        for i, (_, fn, timed, buffers) in enumerate(prepared):
            if timed.shape[0] == 0:
                continue
            inner = max(1, math.ceil(cfg.min_ops / timed.shape[0]))
            for radius in (False, True):
                ns = _time_pass(fn, timed, radius, inner, buffers)
                if rep >= cfg.warmup:
                    samples[(i, radius)].append(ns)

    for i, (result, _, timed, _) in enumerate(prepared):
        if timed.shape[0] == 0:
            continue
        main = np.array(samples[(i, cfg.compute_radius)])
        result.ns_op_median = float(np.median(main))
        result.ns_op_p10 = float(np.percentile(main, 10))
        result.ns_op_p90 = float(np.percentile(main, 90))
        result.ns_op_r2_median = float(np.median(samples[(i, False)]))
        result.ns_op_r_median = float(np.median(samples[(i, True)]))
        result.sqrt_share = (result.ns_op_r_median - result.ns_op_r2_median) / result.ns_op_r_median

    std = next((r for r, *_ in prepared if r.method == "standard"), None)
    if std is not None and std.ns_op_median:
        for result, *_ in prepared:
            same_inputs = kernels.vertex_count(result.method, cfg.dim) == 3
            if same_inputs and result.ns_op_median:
                result.speedup_vs_standard = std.ns_op_median / result.ns_op_median

    backend = "python" if kernels.backend_module(cfg.backend).__name__.endswith("_py") else "compiled"
    return BenchReport(backend, cfg.compute_radius, rejected, [r for r, *_ in prepared])


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def emit_report(report, fmt="csv"):
    """Serialize a :class:`BenchReport` as CSV (fixed header) or one JSON object."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, allow_nan=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.results:
        row = r.csv_row()
        w.writerow([_fmt(row[k]) for k in CSV_HEADER])
    return buf.getvalue()


_INT_COLS = {"dim", "count", "seed", "failures"}
_STR_COLS = {"method", "family"}


def parse_csv_report(text):
    """Parse :func:`emit_report` CSV output back into typed row dicts."""
    rows = []
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    for raw in reader:
        row = {}
        for k, v in raw.items():
            if k in _STR_COLS:
                row[k] = v
            elif v == "":
                row[k] = None
            elif k in _INT_COLS:
                row[k] = int(v)
            else:
                row[k] = float(v)
        rows.append(row)
    return rows
