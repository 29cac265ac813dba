"""Time every batch kernel on the compiled and the pure-Python backend.

    python benchmarks/compare_backends.py [--count N] [--repeats R]
"""
import argparse
import statistics
import time

import numpy as np

from circumsphere import kernels
from circumsphere.bench import BenchConfig, generate_inputs

CASES = [
    ("standard", 3),
    ("projective", 3),
    ("tetra-closed", 3),
    ("linear", 3),
    ("linear", 6),
    ("facet-projective", 3),
    ("facet-projective", 6),
]


def time_kernel(fn, batch, repeats):
    out = (np.empty((batch.shape[0], batch.shape[2])), np.empty(batch.shape[0]), np.empty(batch.shape[0], np.int8))
    fn(batch, False, out)
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn(batch, False, out)
        samples.append((time.perf_counter_ns() - t0) / batch.shape[0])
    return statistics.median(samples)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=100_000)
    p.add_argument("--repeats", type=int, default=7)
    args = p.parse_args()

    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available")
    print(f"{'method':<18}{'dim':>4}" + "".join(f"{b + ' ns/op':>18}" for b in backends) + f"{'ratio':>10}")
    for method, dim in CASES:
        cfg = BenchConfig(methods=(method,), count=args.count, dim=dim)
        batch = generate_inputs(cfg).simplices
        ns = [time_kernel(kernels.kernel(method, b), batch, args.repeats) for b in backends]
        ratio = f"{ns[-1] / ns[0]:>9.1f}x" if len(ns) == 2 else ""
        print(f"{method:<18}{dim:>4}" + "".join(f"{x:>18.1f}" for x in ns) + ratio)


if __name__ == "__main__":
    main()
