import json

import numpy as np
import pytest

from circumsphere.bench import (
    CSV_HEADER,
    EXPONENTS,
    BenchConfig,
    emit_report,
    generate_inputs,
    gram_ratios,
    parse_csv_report,
    run_bench,
)

FAST = dict(min_ops=2000, warmup=0, repeats=3)


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(methods=("bogus",))
    with pytest.raises(ValueError):
        BenchConfig(family="sphere")
    with pytest.raises(ValueError):
        BenchConfig(count=0)
    with pytest.raises(ValueError):
        BenchConfig(methods=("standard",), dim=4)
    with pytest.raises(ValueError):
        BenchConfig(seed=-1)
    assert BenchConfig(methods="projective").methods == ("projective",)


@pytest.mark.parametrize("family", ["uniform", "needle", "cap"])
def test_inputs_are_deterministic(family):
    cfg = BenchConfig(family=family, count=500, seed=42)
    a = generate_inputs(cfg).simplices
    b = generate_inputs(cfg).simplices
    assert a.tobytes() == b.tobytes()
    other = generate_inputs(BenchConfig(family=family, count=500, seed=43)).simplices
    assert a.tobytes() != other.tobytes()


def test_inputs_depend_only_on_stream_key():
    # the method list does not perturb the stream for a given vertex count
    a = generate_inputs(BenchConfig(methods=("standard",), count=100)).simplices
    b = generate_inputs(BenchConfig(methods=("projective", "tetra-closed"), count=100)).simplices
    assert a.tobytes() == b.tobytes()


def test_uniform_rejection_rate():
    batch = generate_inputs(BenchConfig(count=100_000))
    assert batch.rejected / 100_000 < 1e-3
    assert np.all(gram_ratios(batch.simplices) >= 1e-6)


@pytest.mark.parametrize("family", ["needle", "cap"])
@pytest.mark.parametrize("k,dim", [(3, 3), (4, 3), (5, 4)])
def test_conditioning_tracks_exponent(family, k, dim):
    method = {3: "standard", 4: "tetra-closed", 5: "linear"}[k]
    batch = generate_inputs(BenchConfig(methods=(method,), family=family, count=240, dim=dim), k)
    ratios = gram_ratios(batch.simplices, origin=-1)
    for e in EXPONENTS[:6]:
        r = ratios[batch.exponents == e]
        assert np.all(r > 0)
        # squared Gram ratio falls as 10^(-2e) up to a shape factor
        assert np.all(r <= 10.0 ** (-2 * e + 2))
        assert np.all(r >= 10.0 ** (-2 * e - 4))


def test_needle_exponent_six_conditioning():
    batch = generate_inputs(BenchConfig(family="needle", count=1200))
    r = gram_ratios(batch.simplices, origin=-1)[batch.exponents == 6]
    assert np.all((r >= 1e-14) & (r <= 1e-10))


def test_run_bench_timing_and_residuals():
    cfg = BenchConfig(methods=("standard", "projective"), family="needle", count=240, **FAST)
    rep = run_bench(cfg)
    assert [r.method for r in rep.results] == ["standard", "projective"]
    for r in rep.results:
        assert 0 < r.ns_op_p10 <= r.ns_op_median <= r.ns_op_p90
        assert r.failures == sum(r.failures_by_type.values())
        for e in range(1, 5):
            assert r.residual_curve[str(e)]["max_resid"] <= 1e-8
        for e, point in r.residual_curve.items():
            assert point["max_resid"] is None or np.isfinite(point["max_resid"])
    assert rep.results[0].speedup_vs_standard == 1.0
    assert rep.results[1].speedup_vs_standard > 0


def test_speedup_only_for_triangle_methods():
    cfg = BenchConfig(methods=("standard", "tetra-closed"), count=50, **FAST)
    rep = run_bench(cfg)
    assert rep.results[1].speedup_vs_standard is None


def test_csv_header_and_single_row():
    rep = run_bench(BenchConfig(methods=("projective",), count=1, **FAST))
    text = emit_report(rep, "csv")
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[0] == (
        "method,family,dim,count,seed,ns_op_median,ns_op_p10,ns_op_p90,"
        "max_resid,mean_resid,failures,speedup_vs_standard"
    )
    assert len(lines) == 2
    row = parse_csv_report(text)[0]
    assert row["count"] == 1 and row["method"] == "projective" and row["speedup_vs_standard"] is None


def test_csv_json_round_trip():
    rep = run_bench(BenchConfig(methods=("standard", "projective"), family="cap", count=120, **FAST))
    rows = parse_csv_report(emit_report(rep, "csv"))
    doc = json.loads(emit_report(rep, "json"))
    assert doc["backend"] in ("compiled", "python")
    for row, res in zip(rows, doc["results"]):
        for k in CSV_HEADER:
            assert row[k] == res[k]


def test_parse_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_csv_report("a,b\n1,2\n")


def test_emit_unknown_format():
    rep = run_bench(BenchConfig(methods=("standard",), count=2, **FAST))
    with pytest.raises(ValueError):
        emit_report(rep, "xml")


@pytest.mark.parametrize("method,dim", [("linear", 5), ("facet-projective", 5)])
def test_nd_methods_bench(method, dim):
    rep = run_bench(BenchConfig(methods=(method,), dim=dim, count=100, **FAST))
    r = rep.results[0]
    assert r.failures == 0 and r.max_resid <= 1e-8
