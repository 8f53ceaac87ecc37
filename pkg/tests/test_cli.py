"""CLI surface: subcommands, exit codes, output formats, figure datasets."""

import csv
import json
import math

import pytest

from lapspread.bounds import cluster_fraction, g_bound, green_residual, se_residual
from lapspread.cli import main
from lapspread.figures import emit_figure, sample_curve


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def test_spectrum_family_p4(capsys):
    code, out, _ = run(capsys, "spectrum", "G:0,1,1")
    assert code == 0
    assert "0.58578643762690" in out
    assert "D(G) = {2, 3} (size 2)" in out


def test_spectrum_dandelion10(capsys):
    code, out, _ = run(capsys, "spectrum", "dandelion:10")
    assert code == 0
    lam2 = float(out.splitlines()[2].split("=")[1])
    phi = (math.sqrt(5) + 1) / 2
    assert 2 - phi < lam2 < 2 - phi + 0.1


def test_spectrum_graph6_input(capsys):
    code, out, _ = run(capsys, "spectrum", "C~")
    assert code == 0
    lam2 = float(out.splitlines()[2].split("=")[1])
    assert lam2 == pytest.approx(4.0, abs=1e-9)


def test_spectrum_weighted_family(capsys):
    code, out, _ = run(capsys, "spectrum", "se:n=5,s=0.5")
    assert code == 0
    assert "D(G)" not in out


def test_spectrum_invalid_spec_usage_error(capsys):
    code, _, err = run(capsys, "spectrum", "G:2,3")
    assert code == 2
    assert "error" in err


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def test_enumerate_n4_all_dedup(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--filter", "all", "--dedup")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 11
    assert lines[0].startswith("graph6,n,x,y")


def test_enumerate_n9_refused(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "9", "--filter", "all")
    assert code == 2
    assert "refused" in err


def test_enumerate_n8_gated(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "8", "--filter", "all")
    assert code == 2
    assert "gated" in err


def test_enumerate_checks_pass(capsys):
    code, out, err = run(capsys, "enumerate", "--n", "5", "--filter", "connected",
                         "--dedup", "--check", "conj1", "--check", "weak",
                         "--check", "prop-comp", "--check", "spread",
                         "--check", "maxfloor", "--check", "green", "--check", "oneroot")
    assert code == 0
    assert err == ""
    assert len(out.strip().splitlines()) == 22


def test_enumerate_jsonl(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--filter", "all",
                       "--dedup", "--out", "jsonl")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 11
    assert all("graph6" in r and "x" in r for r in rows)


def test_enumerate_to_file_stable_across_threads(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "enumerate", "--n", "6", "--filter", "both-diam3", "--dedup",
        "--out-file", str(a), "--threads", "1")
    run(capsys, "enumerate", "--n", "6", "--filter", "both-diam3", "--dedup",
        "--out-file", str(b), "--threads", "4")
    assert a.read_bytes() == b.read_bytes()


def test_enumerate_threads_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LAPSPREAD_THREADS", "2")
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--filter", "all", "--dedup",
                       "--threads", "1")
    assert code == 0
    assert len(out.strip().splitlines()) == 12


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_appendix(capsys, tmp_path):
    out_path = tmp_path / "reports.json"
    code, out, _ = run(capsys, "verify", "--suite", "appendix", "--n-max", "20",
                       "--out", str(out_path))
    assert code == 0
    assert "[PASS] appendix" in out
    reports = json.loads(out_path.read_text())
    assert reports[0]["suite_id"] == "appendix"
    assert reports[0]["status"] == "PASS"


def test_verify_se_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "se", "--n-max", "7",
                       "--samples", "3")
    assert code == 0
    assert "[PASS] se" in out


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bogus")
    assert code == 2
    assert "unknown suite" in err


# ---------------------------------------------------------------------------
# figure emission
# ---------------------------------------------------------------------------

def test_figure3_dataset(tmp_path, capsys):
    code, out, _ = run(capsys, "figure", "--id", "3", "--out", str(tmp_path / "f3"))
    assert code == 0
    manifest = json.loads((tmp_path / "f3" / "manifest.json").read_text())
    assert manifest["figure_id"] == 3 and manifest["n"] == 20
    assert manifest["points"] is None
    assert {c["curve_id"] for c in manifest["curves"]} == \
        {"LINE_X_PLUS_Y_1", "RED_FN", "PURPLE_WEAK"}
    for cv in manifest["curves"]:
        rows = list(csv.DictReader((tmp_path / "f3" / cv["file"]).open()))
        assert len(rows) == 512


def test_red_curve_endpoints_and_identity():
    pts = sample_curve("RED_FN", 7)
    k0, x0, y0 = pts[0]
    kEnd, x1, y1 = pts[-1]
    # endpoints approach (1, 0) and (0, 1)
    assert abs(x0 - 1) < 0.01 and y0 < 0.05
    assert x1 < 0.05 and abs(y1 - 1) < 0.01
    for k, x, y in pts[::37]:
        assert abs(x + y - 1 - g_bound(7, k)) <= 1e-10


def test_green_curve_residuals():
    for s, x, y in sample_curve("GREEN_EMP", 7)[::29]:
        assert abs(green_residual(7, x, y)) <= 1e-10
        assert abs(cluster_fraction(7, x) + cluster_fraction(7, y) - 1) <= 1e-10


def test_blue_curve_diagonal_crossing():
    # on the diagonal the hyperbola crosses at x = (n - sqrt(n^2 - 2n))/2
    n = 7
    diag = (n - math.sqrt(n * n - 2 * n)) / 2
    assert abs(se_residual(n, diag, diag)) <= 1e-12
    pts = sample_curve("BLUE_SE", n)
    best = min(pts, key=lambda p: abs(p[1] - diag))
    assert abs(best[2] - diag) < 0.01


def test_figure_dataset_emission_small(tmp_path):
    manifest = emit_figure(1, tmp_path / "f1", n=6)
    assert manifest["points"]["count"] > 0
    points_file = tmp_path / "f1" / "points.csv"
    rows = list(csv.DictReader(points_file.open()))
    assert len(rows) == manifest["points"]["count"]
    assert all(float(r["x"]) >= 0 for r in rows)
    window = manifest["window"]
    assert window[0] <= min(float(r["x"]) for r in rows) <= window[1]

    m9 = emit_figure(9, tmp_path / "f9", n=6)
    assert m9["transform"] == "cluster_fraction"
    rows9 = list(csv.DictReader((tmp_path / "f9" / "points.csv").open()))
    assert rows9[0].keys() == {"graph6", "n", "x", "y"}

    m5 = emit_figure(5, tmp_path / "f5", n=6)
    rows5 = list(csv.DictReader((tmp_path / "f5" / "points.csv").open()))
    assert {r["bound_id"] for r in rows5} == {"F_N", "LU"}
    for r in rows5:
        assert float(r["bound"]) <= float(r["lambda2"]) + 1e-7


def test_figure_emission_deterministic(tmp_path):
    emit_figure(3, tmp_path / "a", n=12)
    emit_figure(3, tmp_path / "b", n=12)
    for name in ["manifest.json", "curve_red_fn.csv"]:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_figure_bad_id(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["figure", "--id", "2", "--out", "/tmp/nope"])
    assert exc.value.code == 2


def test_enumerate_check_failure_exit_code(capsys, monkeypatch):
    # force a failing check to exercise the exit-1 / stderr-witness path
    from lapspread import cli as cli_mod
    monkeypatch.setitem(cli_mod.CHECKS, "conj1", lambda g, rec: (False, -1.0))
    code, out, err = run(capsys, "enumerate", "--n", "4", "--filter", "all",
                         "--dedup", "--check", "conj1")
    assert code == 1
    assert err.count("check conj1 failed") == 11
    assert "C?" in err  # witnesses printed as graph6
