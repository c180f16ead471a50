"""Command-line interface: exit codes, report schema, determinism, formats."""

import json

import pytest

from phillipsop.cli import main, _parse_grid

RESIDUAL_KEYS_REGULAR = {
    "green", "theta", "jUnitary", "intertwine", "cSquare", "jcPositivity",
    "cmSpan", "commutatorA", "commutatorS", "system", "similarity",
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_classify_regular_report(capsys):
    code, out = run(capsys, "classify", "--zeta", "1", "--phi", "0",
                    "--omega", "0", "--xi", "0")
    assert code == 0
    report = json.loads(out)
    assert report["spectrumClass"] == "RealLine"
    assert RESIDUAL_KEYS_REGULAR <= set(report["residuals"])
    assert report["cSolution"]["chiTilde"] == -1.0
    assert report["passed"] is True
    assert report["toolVersion"]
    assert "green" in report["toleranceConfig"]
    assert "eigenResiduals" not in report["residuals"]


def test_classify_degenerate_report(capsys):
    code, out = run(capsys, "classify", "--k1", "0", "--k2", "0")
    assert code == 0
    report = json.loads(out)
    assert report["spectrumClass"] == "WholePlane"
    assert report["cSolution"] is None
    eigen = report["residuals"]["eigenResiduals"]
    assert len(eigen) == 6
    assert all(e["residual"] < 1e-12 for e in eigen)


def test_classify_zero_zeta_self_adjoint_case(capsys):
    code, out = run(capsys, "classify", "--zeta", "0", "--phi", "1",
                    "--omega", "2", "--xi", "3")
    assert code == 0
    report = json.loads(out)
    assert report["spectrumClass"] == "RealLine"
    assert report["cSolution"]["chiTilde"] == 0.0
    assert report["cSolution"]["chiHat"] == 0.0


def test_flag_conflicts_exit_2(capsys):
    assert run(capsys, "classify", "--zeta", "1", "--k1", "0", "--k2", "0")[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "classify", "--k1", "0")[0] == 2
    assert run(capsys, "scan", "--zeta", "oops")[0] == 2


def test_parse_grid_forms():
    assert _parse_grid("0") == [0.0]
    assert _parse_grid("0,1.5,3") == [0.0, 1.5, 3.0]
    assert _parse_grid("-2:2:5") == [-2.0, -1.0, 0.0, 1.0, 2.0]
    assert _parse_grid("1:0:0") == []
    with pytest.raises(ValueError):
        _parse_grid("1:2")


def test_scan_regular_grid(capsys):
    code, out = run(capsys, "scan", "--zeta", "-2:2:5", "--phi", "0",
                    "--omega", "0", "--xi", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["points"] == 5
    assert doc["summary"]["spectrumClasses"] == {"RealLine": 5}
    assert len(doc["reports"]) == 5
    zetas = [r["input"]["zeta"] for r in doc["reports"]]
    assert zetas == [-2.0, -1.0, 0.0, 1.0, 2.0]


def test_scan_empty_grid(capsys):
    code, out = run(capsys, "scan", "--zeta", "1:0:0", "--phi", "0",
                    "--omega", "0", "--xi", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["points"] == 0
    assert doc["reports"] == []


def test_scan_parallel_is_byte_identical(capsys):
    _, serial = run(capsys, "scan", "--zeta", "-1:1:3", "--phi", "0,1.5",
                    "--omega", "0", "--xi", "0", "--seed", "3")
    _, parallel = run(capsys, "scan", "--zeta", "-1:1:3", "--phi", "0,1.5",
                      "--omega", "0", "--xi", "0", "--seed", "3", "--jobs", "4")
    assert serial == parallel


def test_scan_csv_format(capsys):
    code, out = run(capsys, "scan", "--k1", "0,3.14", "--k2", "0",
                    "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("k1,k2,spectrumClass")
    assert len(lines) == 3
    assert "WholePlane" in lines[1]


def test_csv_rejected_outside_scan(capsys):
    code, _ = run(capsys, "classify", "--zeta", "1", "--format", "csv")
    assert code == 2


def test_verify_known_suites(capsys):
    code, out = run(capsys, "verify", "--suite", "theta")
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "theta"
    assert doc["pass"] is True
    assert doc["summary"]["maxResidual"] < 1e-12


def test_verify_seeded_runs_identical(capsys):
    _, first = run(capsys, "verify", "--suite", "green", "--seed", "7")
    _, second = run(capsys, "verify", "--suite", "green", "--seed", "7")
    assert first == second


def test_verify_unknown_suite_exit_2(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_verify_tightened_tolerance_fails(capsys):
    # the intertwining residual sits at the rounding floor; demanding 1e-15
    # over the full grid (cosh(3)-sized entries) must fail
    code, out = run(capsys, "verify", "--suite", "csym", "--tol",
                    "intertwine=1e-15")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_tol_override_unknown_key(capsys):
    code, _ = run(capsys, "classify", "--zeta", "1", "--tol", "bogus=1")
    assert code == 2


def test_table_format(capsys):
    code, out = run(capsys, "classify", "--zeta", "1", "--format", "table")
    assert code == 0
    assert "spectrum class : RealLine" in out
    code, out = run(capsys, "verify", "--suite", "weyl", "--format", "table")
    assert code == 0
    assert "suite" in out
