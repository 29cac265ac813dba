"""Command-line interface: ``compute``, ``bench`` and ``verify``.

Exit codes: 0 success, 1 residual/oracle failure, 2 usage error,
3 every input simplex was degenerate.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from . import kernels
from .bench import FAMILIES, BenchConfig, emit_report, run_bench
from .errors import DimensionError
from .io import read_simplices
from .verify import verify_batch

EXIT_OK, EXIT_RESIDUAL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3

log = logging.getLogger("circumsphere")


def _fmt(x):
    return "%.17g" % x


def _compute(args):
    try:
        k = kernels.vertex_count(args.method, args.dim)
        simplices = read_simplices(args.input, args.dim, k)
        centers, values, status = kernels.compute_batch(args.method, simplices, args.radius, args.backend)
    except (DimensionError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    value_name = "radius" if args.radius else "radius_sq"
    names = ["ok"] + [kernels.STATUS_NAMES[c] for c in sorted(kernels.STATUS_NAMES)]
    if args.output == "json":
        rows = [
            {"index": i, "status": names[s], "center": c.tolist(), value_name: float(v)}
            for i, (c, v, s) in enumerate(zip(centers, values, status))
        ]
        sys.stdout.write(json.dumps({"method": args.method, "dim": args.dim, "results": rows}, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "status"] + [f"center_{j}" for j in range(args.dim)] + [value_name])
        for i, (c, v, s) in enumerate(zip(centers, values, status)):
            w.writerow([i, names[s]] + [_fmt(x) for x in c] + [_fmt(v)])
        sys.stdout.write(buf.getvalue())
    if np.all(status != kernels.STATUS_OK):
        return EXIT_DEGENERATE
    return EXIT_OK


def _bench(args):
    try:
        cfg = BenchConfig(
            methods=tuple(m.strip() for m in args.method.split(",") if m.strip()),
            family=args.family,
            count=args.count,
            dim=args.dim,
            seed=args.seed,
            compute_radius=args.radius,
            backend=args.backend,
            min_ops=args.min_ops,
            repeats=args.repeats,
            warmup=args.warmup,
        )
        report = run_bench(cfg)
    except (ValueError, ImportError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    sys.stdout.write(emit_report(report, args.output))
    for r in report.results:
        parts = [f"{r.method}: {r.ns_op_median or float('nan'):.1f} ns/op"]
        if r.speedup_vs_standard is not None:
            parts.append(f"speedup vs standard {r.speedup_vs_standard:.3f}x")
        if r.sqrt_share is not None:
            parts.append(f"sqrt share {100 * r.sqrt_share:.1f}%")
        log.info(", ".join(parts))
    if all(r.failures == r.count for r in report.results):
        return EXIT_DEGENERATE
    return EXIT_OK


def _verify(args):
    try:
        simplices = read_simplices(args.input, args.dim)
        summary, _ = verify_batch(simplices)
    except (DimensionError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    summary["passed"] = not summary["breaches"]
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    if summary["breaches"]:
        return EXIT_RESIDUAL
    if summary["ok"] == 0:
        return EXIT_DEGENERATE
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="circumsphere", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    methods = sorted(kernels.METHODS)

    c = sub.add_parser("compute", help="circumspheres for simplices read from a file")
    c.add_argument("--method", required=True, choices=methods)
    c.add_argument("--input", required=True)
    c.add_argument("--dim", type=int, default=3)
    c.add_argument("--radius", action="store_true", help="emit r instead of r^2")
    c.add_argument("--output", choices=("csv", "json"), default="csv")
    c.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    c.set_defaults(func=_compute)

    b = sub.add_parser("bench", help="time methods on generated inputs")
    b.add_argument("--method", default="standard,projective", help="comma-separated list of " + ", ".join(methods))
    b.add_argument("--family", choices=FAMILIES, default="uniform")
    b.add_argument("--count", type=int, default=100_000)
    b.add_argument("--dim", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--radius", action="store_true", help="time the path that takes the square root")
    b.add_argument("--output", choices=("csv", "json"), default="csv")
    b.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    b.add_argument("--min-ops", type=int, default=100_000)
    b.add_argument("--repeats", type=int, default=9)
    b.add_argument("--warmup", type=int, default=3)
    b.set_defaults(func=_bench)

    v = sub.add_parser("verify", help="run the oracle suite over simplices read from a file")
    v.add_argument("--input", required=True)
    v.add_argument("--dim", type=int, default=3)
    v.set_defaults(func=_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
