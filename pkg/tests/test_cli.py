import json
import math

import pytest

from smoothconst import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constant_power_weight_dirac(capsys):
    code, out, _ = run(capsys, "constant", "--eq", "dirac", "--weight", "typeA:s=2", "--d", "3", "--m", "0")
    assert code == 0
    data = json.loads(out)
    assert data["computed"] == pytest.approx(4 * math.pi / 3, rel=1e-6)
    assert data["closed_form"] == pytest.approx(4 * math.pi / 3, rel=1e-15)


def test_constant_bessel_k0_planar(capsys):
    code, out, _ = run(capsys, "constant", "--weight", "besselK0", "--psi", "sqrt-r", "--d", "2")
    data = json.loads(out)
    assert code == 0
    assert data["computed"] == pytest.approx(math.pi / 2, rel=1e-9)
    assert data["attainment"]["tag"] == "boundary-limit"


def test_constant_homogeneous_dirac(capsys):
    code, out, _ = run(capsys, "constant", "--eq", "dirac", "--weight", "typeB:s=1.5", "--d", "4", "--m", "1")
    data = json.loads(out)
    assert code == 0 and data["discrepancy"] < 1e-12


def test_constant_writes_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "constant", "--weight", "typeB:s=2.5", "--d", "3", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["case"]["weight"] == "typeB:s=2.5"


def test_hypothesis_failure_exit_code(capsys):
    code, _, err = run(capsys, "constant", "--weight", "fejer", "--d", "2")
    assert code == 2 and "non-negative" in err


def test_inadmissible_pair_exit_code(capsys):
    code, _, err = run(capsys, "constant", "--weight", "typeA:s=2", "--d", "2")
    assert code == 2 and "typeA" in err


def test_strict_truncation_exit_code(capsys):
    code, _, err = run(capsys, "constant", "--weight", "gaussian", "--d", "3", "--k-max", "2", "--strict")
    assert code == 3 and "truncation" in err


def test_profile_csv_is_deterministic(capsys):
    args = ("profile", "--weight", "gaussian", "--psi", "sqrt-r", "--d", "2", "--normalize", "l1", "--points", "25",
            "--r-min", "0.5", "--r-max", "2")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    lines = first.strip().splitlines()
    assert lines[0] == "r,value" and len(lines) == 26
    peak = max(float(line.split(",")[1]) for line in lines[1:])
    assert peak == pytest.approx(1.17516, abs=2e-3)


def test_profile_unit_normalisation_power_weight(capsys):
    _, out, _ = run(capsys, "profile", "--weight", "typeA:s=2", "--d", "3", "--normalize", "unit", "--points", "5",
                    "--r-min", "1e-3", "--r-max", "1e3")
    values = [float(line.split(",")[1]) for line in out.strip().splitlines()[1:]]
    assert values[0] == pytest.approx(1.0, abs=2e-3)
    assert all(b < a for a, b in zip(values, values[1:]))


def test_profile_dirac(capsys):
    code, out, _ = run(capsys, "profile", "--weight", "typeB:s=1.5", "--d", "3", "--eq", "dirac", "--m", "0",
                       "--points", "3")
    values = [float(line.split(",")[1]) for line in out.strip().splitlines()[1:]]
    assert code == 0
    assert max(values) == pytest.approx(min(values), rel=1e-14)


def test_verify_single_check_json(capsys):
    code, out, err = run(capsys, "verify", "--only", "lemma-ik", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and data["checks"][0]["name"] == "bessel-identity"
    assert "[PASS]" in err


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "--only", "nothing")
    assert code == 1 and "unknown" in err
