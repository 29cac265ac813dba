import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from circumsphere import verify
from circumsphere.cli import main
from circumsphere.io import format_simplices, parse_simplices
from conftest import random_simplices

FAST = ["--min-ops", "2000", "--warmup", "0", "--repeats", "3"]


@pytest.fixture
def tri_file(tmp_path, rng):
    p = tmp_path / "tri.txt"
    p.write_text("# A B C\n" + format_simplices(random_simplices(rng, 5, 3, 3)))
    return p


def test_io_round_trip(rng):
    v = random_simplices(rng, 7, 4, 3)
    assert np.array_equal(parse_simplices(format_simplices(v), 3), v)


def test_io_errors():
    from circumsphere.errors import DimensionError

    with pytest.raises(DimensionError):
        parse_simplices("1 2 3 4\n", 3)
    with pytest.raises(DimensionError):
        parse_simplices("# only a comment\n", 3)
    with pytest.raises(DimensionError):
        parse_simplices("0 0 0 1 0 0 0 1 0\n0 0 0 1 0 0\n", 3)
    with pytest.raises(DimensionError):
        parse_simplices("0 0 0 1 0 x 0 1 0\n", 3)


def test_compute_csv(tri_file, capsys):
    assert main(["compute", "--method", "projective", "--input", str(tri_file)]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["index", "status", "center_0", "center_1", "center_2", "radius_sq"]
    assert len(rows) == 6 and all(r[1] == "ok" for r in rows[1:])


def test_compute_json_radius_matches_scalar(tri_file, capsys):
    from circumsphere import circumsphere3_standard

    assert main(["compute", "--method", "standard", "--input", str(tri_file), "--radius", "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    tris = parse_simplices(tri_file.read_text(), 3)
    for row, t in zip(doc["results"], tris):
        assert row["radius"] == pytest.approx(np.sqrt(circumsphere3_standard(t).radius_sq), rel=1e-14)


def test_compute_all_degenerate(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("0 0 0 1 1 1 2 2 2\n0 0 0 0 0 0 1 0 0\n")
    assert main(["compute", "--method", "standard", "--input", str(p)]) == 3
    assert "degenerate" in capsys.readouterr().out


def test_compute_usage_errors(tri_file, tmp_path):
    assert main(["compute", "--method", "tetra-closed", "--input", str(tri_file)]) == 2
    assert main(["compute", "--method", "standard", "--input", str(tmp_path / "missing.txt")]) == 2
    assert main(["compute", "--method", "standard", "--dim", "4", "--input", str(tri_file)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--method", "bogus", "--input", str(tri_file)])
    assert exc.value.code == 2


def test_compute_nd(tmp_path, rng, capsys):
    p = tmp_path / "facets.txt"
    p.write_text(format_simplices(random_simplices(rng, 3, 5, 5)))
    assert main(["compute", "--method", "facet-projective", "--dim", "5", "--input", str(p)]) == 0
    assert capsys.readouterr().out.splitlines()[0].endswith("center_4,radius_sq")


def test_bench_csv(capsys):
    assert main(["bench", "--method", "standard,projective", "--count", "64", *FAST]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("method,family,dim,count,seed,")
    assert [line.split(",")[0] for line in lines[1:]] == ["standard", "projective"]


def test_bench_json_and_verbose(capsys, caplog):
    caplog.set_level("INFO", logger="circumsphere")
    assert main(["-v", "bench", "--method", "projective", "--family", "cap", "--count", "24", "--output", "json", *FAST]) == 0
    out = capsys.readouterr()
    doc = json.loads(out.out)
    assert doc["results"][0]["family"] == "cap"
    assert "ns/op" in caplog.text


def test_bench_usage_errors():
    assert main(["bench", "--method", "standard", "--count", "0"]) == 2
    assert main(["bench", "--method", "nope"]) == 2
    assert main(["bench", "--method", "projective", "--dim", "4"]) == 2


def test_verify_ok(tri_file, capsys):
    assert main(["verify", "--input", str(tri_file)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["passed"] and summary["ok"] == 5


def test_verify_tetrahedra_and_nd(tmp_path, rng, capsys):
    p = tmp_path / "tet.txt"
    p.write_text(format_simplices(random_simplices(rng, 4, 4, 3)))
    assert main(["verify", "--input", str(p)]) == 0
    q = tmp_path / "nd.txt"
    q.write_text(format_simplices(random_simplices(rng, 4, 6, 5)))
    assert main(["verify", "--input", str(q), "--dim", "5"]) == 0
    capsys.readouterr()


def test_verify_breach_exit_code(tri_file, monkeypatch, capsys):
    monkeypatch.setitem(verify.LIMITS, "weight_identity", -1.0)
    assert main(["verify", "--input", str(tri_file)]) == 1
    summary = json.loads(capsys.readouterr().out)
    assert not summary["passed"] and summary["breaches"]


def test_verify_all_degenerate(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("0 0 0 1 1 1 2 2 2\n")
    assert main(["verify", "--input", str(p)]) == 3
    capsys.readouterr()


def test_verify_usage_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0 0 0 1 1 1 2 2 2 3 3 3 4 4 4\n")
    assert main(["verify", "--input", str(p)]) == 2


def test_console_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "circumsphere.cli", "compute", "--method", "linear", "--dim", "2", "--input", "/dev/null"],
        capture_output=True, text=True,
    )
    assert out.returncode == 2
