import csv
import io
import json
import math
import subprocess
import sys

import pytest

from starcert import cli, criteria
from starcert.criteria import ConclusionStatus, HypothesisStatus

FAST = ["--radii", "0.3,0.6,0.9", "--thetas", "128", "--refine", "10"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_json(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    names = [d["name"] for d in json.loads(out)]
    assert {"identity", "koebe", "paper_example_1", "paper_example_2"} <= set(names)


def test_catalog_csv(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["name", "params", "formula"]


def test_check_example_1(capsys):
    code, out, _ = run(capsys, "check", "--fn", "paper_example_1", "--criterion", "T1",
                       "--alpha", "2.7320508")
    d = json.loads(out)
    assert code == 0
    assert d["threshold"] == pytest.approx(math.pi / 4, abs=1e-7)
    assert d["hypothesis"]["status"] == "BOUNDARY_LIMIT"
    assert d["conclusion"]["status"] == "OBSERVED"


def test_check_named_constant(capsys):
    code, out, _ = run(capsys, "check", "--fn", "paper_example_2", "--criterion", "T3",
                       "--gamma", "sqrt3-1")
    d = json.loads(out)
    assert code == 0 and d["threshold"] == pytest.approx(math.pi / 6, abs=1e-12)
    assert d["params"]["gamma"] == pytest.approx(math.sqrt(3) - 1)


def test_check_identity_holds(capsys):
    code, out, _ = run(capsys, "check", "--fn", "identity", "--criterion", "T1", "--alpha", "2")
    d = json.loads(out)
    assert code == 0
    assert (d["hypothesis"]["status"], d["conclusion"]["status"]) == ("HOLDS", "OBSERVED")


def test_check_koebe_dev1(capsys):
    code, out, _ = run(capsys, "check", "--fn", "koebe", "--criterion", "T3_COR_DEV1")
    d = json.loads(out)
    assert code == 0
    assert (d["hypothesis"]["status"], d["conclusion"]["status"]) == ("FAILS", "VIOLATED")
    assert d["implication_consistent"] is True


def test_check_class_g(capsys):
    code, out, _ = run(capsys, "check", "--fn", "koebe", "--criterion", "CLASS_G", *FAST)
    assert code == 0 and json.loads(out)["status"] == "FAILS"


def test_check_csv(capsys):
    code, out, _ = run(capsys, "check", "--fn", "identity", "--criterion", "T2", "--beta", "0",
                       "--format", "csv", *FAST)
    rows = dict(csv.reader(io.StringIO(out)))
    assert code == 0 and rows["hypothesis.status"] == "HOLDS"


def test_inconsistent_report_exits_2(capsys, monkeypatch):
    real = criteria.certify

    def broken(*a, **kw):
        rep = real(*a, **kw)
        return criteria.CriterionReport(rep.criterion, rep.threshold, rep.hypothesis_scan,
                                        HypothesisStatus.HOLDS, rep.conclusion_scan,
                                        ConclusionStatus.VIOLATED, rep.function)
    monkeypatch.setattr(criteria, "certify", broken)
    code, out, err = run(capsys, "check", "--fn", "identity", "--criterion", "T1", "--alpha", "2", *FAST)
    assert code == 2 and "INCONSISTENT" in err
    assert json.loads(out)["implication_consistent"] is False


@pytest.mark.parametrize("argv", [
    ["check", "--fn", "nope", "--criterion", "T1", "--alpha", "2"],
    ["check", "--fn", "identity", "--criterion", "T1"],
    ["check", "--fn", "identity", "--criterion", "T1", "--alpha", "0.5"],
    ["check", "--fn", "identity", "--criterion", "T9"],
    ["check", "--criterion", "T1", "--alpha", "2"],
    ["check", "--fn", "identity", "--criterion", "T1", "--alpha", "2", "--radii", "0.5,0.2"],
    ["check", "--fn", "identity", "--criterion", "T1", "--alpha", "abc"],
    ["scan", "--fn", "identity", "--functional", "NOPE"],
    ["sweep", "--criterion", "T1", "--start", "2", "--stop", "2"],
    ["sweep", "--criterion", "T1", "--step", "-1"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_coeffs_file(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text(json.dumps([[0, 0], [1, 0], [-0.25, 0]]))
    code, out, _ = run(capsys, "check", "--coeffs-file", str(path), "--criterion", "CLASS_G", *FAST)
    assert code == 0 and json.loads(out)["status"] == "HOLDS"
    bad = tmp_path / "g.json"
    bad.write_text(json.dumps([[0, 0], [2, 0]]))
    code, _, err = run(capsys, "check", "--coeffs-file", str(bad), "--criterion", "T1", "--alpha", "2", *FAST)
    assert code == 1 and "NotNormalized" in err
    code, _, _ = run(capsys, "check", "--coeffs-file", str(tmp_path / "missing.json"),
                     "--criterion", "T1", "--alpha", "2")
    assert code == 1


def test_scan_koebe(capsys):
    code, out, _ = run(capsys, "scan", "--fn", "koebe", "--functional", "RE_STAR",
                       "--radii", "0.5,0.9,0.99")
    d = json.loads(out)
    assert code == 0
    assert d["extremum"] == pytest.approx(0.01 / 1.99, abs=1e-9)
    assert [r for r, _ in d["per_radius"]] == [0.5, 0.9, 0.99]


def test_scan_csv_and_out(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, stdout, _ = run(capsys, "scan", "--fn", "paper_example_2", "--functional", "ARG_GAMMA",
                          "--gamma", "sqrt3-1", "--format", "csv", "--out", str(out), *FAST)
    assert code == 0 and stdout == ""
    rows = list(csv.reader(out.open()))
    assert rows[0][0] == "r" and len(rows) == 4


def test_sweep_t1(capsys):
    code, out, _ = run(capsys, "sweep", "--criterion", "T1", "--start", "1.1", "--stop", "10", "--step", "0.1")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert code == 0 and len(rows) == 90
    best = max(rows, key=lambda r: float(r[2]))
    assert float(best[0]) == pytest.approx(4.0) and float(best[2]) == pytest.approx(2.0, abs=1e-12)


def test_sweep_t2_t3():
    t2 = cli.sweep_rows("T2", -20, 1, 0.1)
    radii = [r for _, _, r in t2]
    assert all(b < a for a, b in zip(radii, radii[1:]))
    assert radii[-1] == pytest.approx(0.37796, abs=1e-5)
    t3 = cli.sweep_rows("T3", 0, 50, 0.5)
    radii = [r for _, _, r in t3]
    assert all(b > a for a, b in zip(radii, radii[1:])) and radii[-1] < 1


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--criterion", "T3", "--format", "json", "--stop", "1")
    d = json.loads(out)
    assert code == 0 and d[0] == {"gamma": 0.0, "threshold": pytest.approx(math.pi / 4),
                                  "radius": pytest.approx(1 / math.sqrt(2))}


def test_geometry(capsys):
    code, out, _ = run(capsys, "geometry")
    d = json.loads(out)
    assert code == 0
    assert d["phi_alpha"]["max"] == pytest.approx(2, abs=1e-6)
    assert all(abs(w["equality_gap"]) < 1e-12 for w in d["lemma_a"])
    assert all(x["inside"] and x["inside_sampled"] for x in d["disc_in_sector"])


@pytest.mark.parametrize("argv", [
    ["check", "--fn", "paper_example_1", "--criterion", "T1", "--alpha", "sqrt3+1"],
    ["sweep", "--criterion", "T2"],
    ["scan", "--fn", "exp_minus_one", "--functional", "MOD_PRE_SCHWARZ", "--format", "csv"],
])
def test_byte_identical_output(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(argv + ["--out", str(a)]) == 0
    from starcert import scan
    scan.clear_caches()
    assert cli.main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_env_order_override(tmp_path):
    cmd = [sys.executable, "-m", "starcert.cli", "scan", "--fn", "paper_example_1",
           "--functional", "RE_STAR", "--radii", "0.5", "--thetas", "16", "--refine", "0"]
    low = subprocess.run(cmd, capture_output=True, text=True, env={"STARCERT_ORDER": "8", "PATH": ""})
    high = subprocess.run(cmd, capture_output=True, text=True)
    assert low.returncode == 0 and high.returncode == 0
    # closed forms drive the scan, so the truncation order does not change the answer
    assert json.loads(low.stdout)["extremum"] == pytest.approx(json.loads(high.stdout)["extremum"], abs=1e-12)


def test_verify_paper(capsys, tmp_path):
    out = tmp_path / "v.json"
    code, stdout, _ = run(capsys, "verify-paper", "--out", str(out))
    assert code == 0
    assert "10/10 items passed" in stdout
    assert all(item["passed"] for item in json.loads(out.read_text()))


def test_verify_paper_reduced_radius(capsys):
    code, stdout, _ = run(capsys, "verify-paper", "--r-max", "0.9")
    assert code == 0, stdout


def test_verify_paper_broken_margin(capsys):
    code, stdout, _ = run(capsys, "verify-paper", "--margin", "1")
    assert code == 2
    lines = {int(line.split("]")[1].split()[0]): line for line in stdout.splitlines() if line.startswith("[")}
    assert lines[4].startswith("[FAIL]") and lines[5].startswith("[FAIL]")
    assert lines[1].startswith("[PASS]")
