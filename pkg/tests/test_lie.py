from fractions import Fraction

import pytest

from hypercurrent.lie import LieAlgebraError, SimpleLieAlgebra, algebra_from_selector, from_structure_csv, killing_form, sl, sl2


def test_sl2_killing_values():
    g = sl2()
    assert killing_form("e", "f", g) == 4
    assert killing_form("h", "h", g) == 8
    assert killing_form("e", "e", g) == 0
    assert killing_form("e", "h", g) == 0


def test_sl3():
    g = sl(3)
    assert g.dim == 8
    # Killing form of sl_m is 2m tr(xy)
    assert killing_form("E12", "E21", g) == 6
    assert killing_form("H1", "H1", g) == 12
    assert killing_form("H1", "H2", g) == -6
    assert g.bracket({"E12": 1}, {"E23": 1}) == {"E13": 1}


def test_selectors(tmp_path):
    assert algebra_from_selector("sl2").labels == ("e", "h", "f")
    assert algebra_from_selector("slN:4").dim == 15
    with pytest.raises(LieAlgebraError):
        algebra_from_selector("so5")


def test_structure_csv(tmp_path):
    path = tmp_path / "sl2.csv"
    path.write_text("# a,b,c,value\ne,f,h,1\nh,e,e,2\nh,f,f,-2\n")
    g = from_structure_csv(path)
    assert killing_form("e", "f", g) == 4
    assert algebra_from_selector(f"file:{path}").bracket({"f": 1}, {"e": 1}) == {"h": -1}


def test_rejects_bad_structure(tmp_path):
    with pytest.raises(LieAlgebraError, match="degenerate"):
        SimpleLieAlgebra(["x"], {})
    with pytest.raises(LieAlgebraError, match="antisymmetric"):
        SimpleLieAlgebra(["x", "y"], {("x", "y"): {"x": 1}})
    bad = tmp_path / "bad.csv"
    bad.write_text("e,f,h\n")
    with pytest.raises(LieAlgebraError, match="4 columns"):
        from_structure_csv(bad)


def test_custom_form():
    g = SimpleLieAlgebra(["e", "h", "f"], sl2()._br, form={("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2})
    assert g.form("e", "f") == Fraction(1)
