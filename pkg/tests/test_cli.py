import json

import pytest

from qmatreps.cli import main, parse_rep_spec, run


def report(argv):
    code, rep = run(argv + ["--format", "json", "--out", "/dev/null"])
    return code, rep


def test_verify_pi5(capsys):
    code = main(["verify", "--algebra", "sym", "--rep", "pi5", "--q", "0.5", "--trunc", "12"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["schema"] == 1 and out["passed"]
    assert len(out["records"]) == 9 and all(r["value"] < 1e-12 for r in out["records"])
    assert "seconds" not in out


def test_identity_z21_pair_past_z11():
    code, rep = report(["identity", "--algebra", "sym", "z21 z21* z11 - z11 z21 z21*", "q (q^2-q^-2) z21^2 z22*"])
    assert code == 0 and rep["records"][0]["value"] == "exact-true"


def test_identity_failure_names_check(capsys):
    code = main(["identity", "z11 z22", "z22 z11", "--format", "text"])
    err = capsys.readouterr().err
    assert code == 1 and "FAILED: z11 z22 = z22 z11" in err


def test_orbit_classify():
    code, rep = report(["orbit", "--x1", "0", "--x2", "1", "--classify"])
    assert code == 0 and rep["records"][0]["value"] == "Omega01"
    code, _ = report(["orbit", "--x1", "0.5", "--x2", "0", "--classify", "--expect", "Omega00"])
    assert code == 1


def test_orbit_exact_point():
    _, rep = report(["orbit", "--x1", "0", "--x2", "0", "--m", "1", "--n", "1", "--q-exact", "1/2"])
    assert rep["records"][0]["value"] == ["3/64", "15/16"]


@pytest.mark.parametrize("argv", [
    ["verify", "--rep", "pi9"],
    ["verify"],
    ["verify", "--rep", "pi3", "--q", "1.5"],
    ["fock", "--q-exact", "abc"],
    ["identity", "z11 +", "z22"],
    ["compose", "--base", "calF1", "--legs", "pi", "--algebra", "mat2"],
    ["nonsense"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_literal_series_fails_with_named_relation(capsys):
    assert main(["verify", "--rep", "pi1:literal=1"]) == 1
    assert "FAILED: z11*.z11" in capsys.readouterr().err


def test_rep_spec_grammar():
    rep = parse_rep_spec("calF1+pi:twist=0.3/0,trunc=8", "sym", 0.5, 12)
    assert rep.dims == (8, 8) and rep.params["twist"] == [0.3, 0.0]
    assert parse_rep_spec("pi1:phi=0.2,psi=0.4", "sym", 0.5, 12).size == 1
    assert parse_rep_spec("calF0+pi+eps", "mat2", 0.5, 6).size == 6


def test_fock_csv(capsys):
    assert main(["fock", "--q-exact", "1/2", "--degree", "2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("check,value,passed") and len(lines) == 4


def test_compose_and_analyze():
    code, rep = report(["compose", "--algebra", "mat2", "--base", "calF1", "--legs", "pi", "eps",
                        "--trunc", "6", "--tol", "1e-10", "--commutant"])
    assert code == 0 and rep["records"][-1]["value"] == 1
    code, rep = report(["analyze", "--task", "equivalence", "--rep", "calF1+eps", "--rep", "pi2", "--expect", "1"])
    assert code == 0
    code, rep = report(["analyze", "--task", "claims", "--group", "2", "--group", "3"])
    assert code == 0 and {r["group"] for r in rep["records"]} == {"typo_detection", "symbolic_oracle"}


def test_spectrum_command():
    code, rep = report(["spectrum", "--rep", "pi3:phi=0.1", "--trunc", "10"])
    assert code == 0 and rep["records"][-1]["value"] == "Omega10"


def test_export_import_round_trip(tmp_path):
    d = str(tmp_path / "ops")
    assert report(["export", "--rep", "pi4:phi=0.3", "--trunc", "6", "--dir", d])[0] == 0
    code, rep = report(["export", "--import-dir", d, "--rep", "pi4:phi=0.3", "--trunc", "6"])
    assert code == 0 and sum(r["check"].endswith("bit-exact") for r in rep["records"]) == 3


def test_timing_is_opt_in():
    _, rep = report(["fock", "--degree", "1", "--timing"])
    assert "seconds" in rep


def test_json_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["spectrum", "--rep", "pi4:phi=0.2", "--trunc", "8"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
