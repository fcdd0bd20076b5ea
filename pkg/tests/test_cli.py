import io
import json
import subprocess
import sys

import pytest

from hypercurrent.cli import main

from conftest import HEXIC, QUARTIC


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_basis():
    code, out, _ = run("basis", "--curve", HEXIC)
    assert code == 0
    assert out.splitlines()[0] == "ω0 = t^-1 dt"
    assert out.splitlines()[6] == "ω6 = t^-6*u dt"
    code, out, _ = run("basis", "--curve", "t^2-2*b*t+1", "--format", "json")
    assert len(json.loads(out)["basis"]) == 3


def test_basis_rejects_zero_constant_term():
    code, _, err = run("basis", "--curve", "t^3")
    assert code == 2 and "a_0" in err


def test_series_both_routes_json():
    code, out, _ = run("series", "q", "-1", "--curve", HEXIC, "--order", "14", "--both-routes", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["equal"]
    assert {"exponent": "13", "coefficient": "1/2"} in data["recursion"]


def test_series_csv_quartic():
    code, out, _ = run("series", "p", "-4", "--curve", QUARTIC, "--order", "13", "--format", "csv")
    assert code == 0
    assert out.splitlines()[:3] == ["exponent,recursion", "0,1", "4,1"]


def test_series_index_out_of_range():
    code, _, err = run("series", "p", "-7", "--curve", HEXIC)
    assert code == 2 and "[-6, -1]" in err


def test_coeffs_csv():
    code, out, _ = run("coeffs", "p", "--curve", HEXIC, "--index", "-1", "--range", "2:2")
    assert code == 0
    assert out.splitlines() == ["k,i,poly", "2,-1,1/2*b"]


def test_bracket_and_caret():
    code, out, _ = run("bracket", "e⊗t", "f⊗t^-1", "--curve", HEXIC)
    assert code == 0 and out.strip() == "[e⊗t, f⊗t^-1] = h⊗1 - 4*ω0"
    code, _, err = run("bracket", "e⊗t^", "f⊗1", "--curve", HEXIC)
    assert code == 2 and "^" in err.splitlines()[-1]


def test_bracket_json_sl3():
    code, out, _ = run("bracket", "E12⊗u", "E23@t", "--curve", HEXIC, "--algebra", "slN:3", "--format", "json")
    assert code == 0
    assert json.loads(out)["terms"] == [{"x": "E13", "exp": 1, "parity": "odd", "coefficient": "1"}]


def test_reduce_with_oracle(tmp_path):
    target = tmp_path / "r.json"
    code, _, _ = run("reduce", "t^2*u dt", "--curve", HEXIC, "--oracle", "--at", "b=2", "--format", "json", "--out", str(target))
    data = json.loads(target.read_text())
    assert code == 0 and data["oracle"]["equal"]
    assert data["class"]["omega"] == ["1/2*b", "0", "0", "1/2", "0", "0"]


def test_reduce_oracle_needs_point():
    code, _, err = run("reduce", "t^2*u dt", "--curve", HEXIC, "--oracle")
    assert code == 2 and "--at" in err


def test_structure_csv():
    code, out, _ = run("structure", "--curve", QUARTIC, "--range", "0:1", "--parity", "even", "--format", "csv")
    assert code == 0
    assert len(out.splitlines()) > 1


def test_verify_is_deterministic():
    a = run("verify", "cocycle", "--curve", QUARTIC, "--trials", "30", "--seed", "5")
    b = run("verify", "cocycle", "--curve", QUARTIC, "--trials", "30", "--seed", "5")
    assert a == b and a[0] == 0


def test_verify_json():
    code, out, _ = run("verify", "oracle", "--curve", HEXIC, "--trials", "10", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["suites"][0]["suite"] == "oracle"


def test_reproduce_hexic_passes():
    code, out, _ = run("reproduce", "hexic")
    assert code == 0
    assert "P_{14,-1} = 21/16*b^5 - 7/8*b^3 + 1/16*b" in out
    # the subcommand name from the interface listing is kept as an alias
    assert run("paper", "hexic") == (code, out, "")


def test_reproduce_quartic_reports_the_sign_mismatch():
    code, out, _ = run("paper", "quartic")
    assert code == 1
    assert "z^12" in out


@pytest.mark.parametrize("argv", [[], ["nope"], ["verify", "jacobi", "--curve", HEXIC, "--trials", "0"],
                                  ["bracket", "e⊗t", "f⊗t", "--curve", HEXIC, "--algebra", "so5"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypercurrent", "basis", "--curve", "t^2 + 1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "ω2 = t^-2*u dt" in proc.stdout
