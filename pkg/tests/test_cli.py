import csv
import io
import json

import pytest

from grer.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pattern_inplane(capsys):
    code, out, _ = call(capsys, "pattern", "--model", "grer", "--alpha", "15", "--theta-i", "75",
                        "--cut", "inplane")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["theta_s_deg", "f", "f_over_max"]
    best = max(rows[1:], key=lambda r: float(r[2]))
    assert float(best[2]) == 1.0 and 55 < float(best[0]) < 75


def test_pattern_full_json(capsys):
    code, out, _ = call(capsys, "pattern", "--model", "rer", "--alpha", "3", "--theta-i", "30",
                        "--cut", "full", "--points", "7", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 7 * 13


def test_normalize(capsys):
    code, out, _ = call(capsys, "normalize", "--model", "grer", "--alpha", "10", "--mode", "pade")
    assert code == 0 and out.splitlines()[1].startswith("pade,")


def test_verify_normalization(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "normalization")
    assert code == 0
    assert all(r[-1] == "True" for r in list(csv.reader(io.StringIO(out)))[1:])


def test_bench_3a(capsys, tmp_path):
    path = tmp_path / "fig3a.csv"
    code, out, _ = call(capsys, "bench", "--fig", "3a", "--alpha-max", "50", "--repeats", "3",
                        "--output", str(path))
    assert code == 0 and out == ""
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["alpha", "method", "terms", "wall_ns", "value"]
    assert len(rows) == 1 + 50 * 4


def test_bench_empty(capsys):
    code, out, _ = call(capsys, "bench", "--fig", "2c", "--points", "0")
    assert code == 0 and out == "alpha,k_series,k_pade,pade_over_series\n"


def test_usage_error(capsys):
    code, _, err = call(capsys, "pattern", "--model", "nope", "--alpha", "1", "--theta-i", "0")
    assert code == 2 and "usage" in err


def test_missing_subcommand(capsys):
    assert call(capsys)[0] == 2


def test_domain_error(capsys):
    code, _, err = call(capsys, "normalize", "--model", "rer", "--alpha", "2.5")
    assert code == 1 and "ValueError" in err
    code, _, _ = call(capsys, "normalize", "--model", "rer", "--alpha", "2", "--mode", "pade")
    assert code == 1


def test_missing_input_file(capsys, tmp_path):
    assert call(capsys, "classify", "--input", str(tmp_path / "nope.csv"))[0] == 1


def test_synth_classify_calibrate(capsys, tmp_path):
    mpc = tmp_path / "m.csv"
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 2, "swarm": {"iterations": 60}}))
    assert call(capsys, "synth", "--rot-step", "15", "--tilt-step", "25", "--output", str(mpc))[0] == 0
    code, out, _ = call(capsys, "classify", "--input", str(mpc))
    assert code == 0 and out.count(",SP\n") >= 1
    fit = tmp_path / "fit.json"
    code, _, _ = call(capsys, "calibrate", "--input", str(mpc), "--config", str(cfg),
                      "--output", str(fit))
    assert code == 0
    m = json.loads(fit.read_text())["material"]
    assert m["S"] == pytest.approx(0.4, abs=0.02)


def test_deterministic_output(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        call(capsys, "synth", "--noise-db", "1", "--seed", "11", "--rot-step", "15",
             "--tilt-step", "25", "--output", str(p))
    assert a.read_bytes() == b.read_bytes()


def test_failed_run_writes_nothing(capsys, tmp_path):
    out = tmp_path / "x.csv"
    call(capsys, "normalize", "--model", "rer", "--alpha", "2.5", "--output", str(out))
    assert not out.exists()
