import csv
import io
import json
import os

import pytest

from hybrid_bell import cli, scan
from hybrid_bell.errors import ConfigError, NumericalError
from hybrid_bell.types import Scheme


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_grid():
    assert scan.parse_grid("0.5:1.0:0.1") == (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    assert scan.parse_grid("0.05:3.0:0.05")[-1] == 3.0
    assert len(scan.parse_grid("0.05:3.0:0.05")) == 60
    assert scan.parse_grid("1e-1,2.5E-1") == (0.1, 0.25)
    assert scan.parse_grid("0.7") == (0.7,)
    for bad in ("1:0:0.1", "0:1:0", "0:1", "a,b", ""):
        with pytest.raises(ConfigError):
            scan.parse_grid(bad)


def test_parse_schemes():
    assert scan.parse_schemes("both") == (Scheme.ONOFF, Scheme.PARITY)
    assert scan.parse_schemes("on/off") == (Scheme.ONOFF,)
    with pytest.raises(ConfigError):
        scan.parse_schemes("homodyne")


def test_config_invariants():
    with pytest.raises(ConfigError):
        scan.ScanConfig("plot")
    with pytest.raises(ConfigError):
        scan.ScanConfig("bell-max", eta_a_grid=(1.2,))
    with pytest.raises(ConfigError):
        scan.ScanConfig("bell-max", format="xml")
    with pytest.raises(ConfigError):
        scan.ScanConfig("threshold", mode="sideways")
    with pytest.raises(ConfigError):
        scan.ScanConfig("bell-max", alpha_range=(0.0, 5.0))


def test_config_file(tmp_path):
    p = tmp_path / "c.ini"
    p.write_text("[alpha-scan]\nscheme = parity\nalpha_grid = 2.93e-1\neta-grid = 8e-1\n")
    kw = scan.load_config(str(p), "alpha-scan")
    assert kw == {"schemes": (Scheme.PARITY,), "alpha_grid": (0.293,), "eta_grid": (0.8,)}
    with pytest.raises(ConfigError):
        scan.load_config(str(p), "bell-max")
    p.write_text("[alpha-scan]\nnope = 1\n")
    with pytest.raises(ConfigError):
        scan.load_config(str(p), "alpha-scan")
    p.write_text("[alpha-scan]\n[verify]\n")
    with pytest.raises(ConfigError):
        scan.load_config(str(p), "alpha-scan")
    with pytest.raises(ConfigError):
        scan.load_config(str(tmp_path / "missing.ini"), "alpha-scan")


def test_thread_env(monkeypatch):
    monkeypatch.setenv(scan.THREADS_ENV, "3")
    assert scan.default_threads() == 3
    monkeypatch.setenv(scan.THREADS_ENV, "junk")
    assert scan.default_threads() == 1


def test_alpha_scan_csv_roundtrip(capsys):
    code, out, _ = run(capsys, "alpha-scan", "--scheme", "both", "--alpha-grid", "0.3,0.664", "--eta-grid", "0.9")
    assert code == 0
    assert "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["scheme"] for r in rows] == ["onoff", "onoff", "parity", "parity"]
    assert [float(r["alpha"]) for r in rows] == [0.3, 0.664, 0.3, 0.664]
    direct = scan.run_alpha_scan(scan.ScanConfig("alpha-scan", alpha_grid=(0.3, 0.664), eta_grid=(0.9,)))
    for r, d in zip(rows, direct):
        for k, v in d.items():
            if isinstance(v, float):
                assert float(r[k]) == v  # exact round trip
        row = scan.ScanRow(**d)
        assert row.reevaluate() == pytest.approx(row.bell_max, abs=1e-9)


def test_json_output(capsys):
    code, out, _ = run(capsys, "bell-max", "--scheme", "onoff", "--alpha-grid", "0.5", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["regime"] == "OnOffReal" and rows[0]["alpha_opt"] is None


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["eta-scan", "--scheme", "parity", "--alpha-grid", "0.2,0.4", "--eta-grid", "0.8:1.0:0.1"]
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b), "--threads", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 1 + 2 * 3
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_bell_max_alpha_optimized(capsys):
    code, out, _ = run(capsys, "bell-max", "--scheme", "onoff", "--eta-a-grid", "1", "--eta-b-grid", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert float(rows[0]["alpha_opt"]) == pytest.approx(0.664, abs=0.005)


def test_config_error_exit(tmp_path, capsys):
    out = tmp_path / "o.csv"
    code, _, err = run(capsys, "alpha-scan", "--eta-grid", "1.5", "--alpha-grid", "0.5", "--out", str(out))
    assert code == 2 and "config error" in err
    assert not out.exists()
    assert run(capsys, "alpha-scan")[0] == 2  # no grid
    assert run(capsys, "threshold", "--mode", "fixed-eta-a")[0] == 2
    assert run(capsys, "figures", "fig42")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_numerical_failure_exit(tmp_path, capsys, monkeypatch):
    out = tmp_path / "o.csv"

    def boom(cfg):
        raise NumericalError("forced")

    monkeypatch.setitem(scan.RUNNERS, "alpha-scan", boom)
    monkeypatch.setitem(cli.RUNNERS, "alpha-scan", boom)
    code, _, err = run(capsys, "alpha-scan", "--alpha-grid", "0.5", "--out", str(out))
    assert code == 3 and "numerical failure" in err
    assert not out.exists()


def test_interrupted_write_leaves_no_file(tmp_path, monkeypatch):
    out = tmp_path / "o.csv"

    def bad_replace(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(cli.os, "replace", bad_replace)
    with pytest.raises(OSError):
        cli.write_atomic(str(out), "x\n")
    assert os.listdir(tmp_path) == []


def test_verify_command(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--samples", "20", "--seed", "4", "--dim", "64")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["status"] == "pass" and float(row["max_deviation"]) < 1e-8
    out_file = tmp_path / "v.csv"
    code, _, err = run(capsys, "verify", "--samples", "3", "--dim", "6", "--max-amp", "3", "--out", str(out_file))
    assert code == 3 and "fail" in err
    assert not out_file.exists()


def test_threshold_command(capsys):
    code, out, _ = run(capsys, "threshold", "--scheme", "onoff", "--mode", "eta-b-only", "--tol", "0.01")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["threshold"]) == pytest.approx(0.5, abs=0.01)


def test_threshold_no_bracket_exit(capsys):
    # fixed eta_A = 0.5 can never violate, whatever eta_B
    code, _, err = run(capsys, "threshold", "--scheme", "onoff", "--mode", "fixed-eta-a", "--fixed", "0.5")
    assert code == 3


def test_contour_example(capsys):
    code, out, _ = run(capsys, "contour", "--scheme", "onoff", "--eta-grid", "0.6:0.7:0.05", "--alpha-grid", "0.1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    v = {float(r["eta_A"]): float(r["bell_max"]) for r in rows}
    assert v[0.6] <= 2.0 + 1e-9 and v[0.7] > 2.0


def test_figure_presets_defined():
    from hybrid_bell.figures import PRESETS, preset_config

    assert sorted(PRESETS) == [f"fig{i}" for i in range(1, 10)]
    cfg = preset_config("fig3", scan.ScanConfig("figures"))
    assert len(cfg.eta_grid) == 26 and len(cfg.alpha_grid) == 30


def test_figure_fig8_difference(monkeypatch, capsys):
    from hybrid_bell import figures

    monkeypatch.setitem(
        figures.PRESETS, "fig8",
        (None, dict(schemes=figures.BOTH, eta_a_grid="0.9,1.0", eta_b_grid="1.0"), "small"),
    )
    code, out, _ = run(capsys, "figures", "fig8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2
    d = {float(r["eta_A"]): float(r["difference"]) for r in rows}
    assert d[1.0] > 0
    for r in rows:
        assert float(r["difference"]) == pytest.approx(float(r["parity_max"]) - float(r["onoff_max"]), abs=0)
