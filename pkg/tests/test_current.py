import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from hypercurrent.curve import parse_curve
from hypercurrent.current import LoopElement, bracket, parse_loop_element, structure_table, table_to_csv, verify_jacobi
from hypercurrent.exact import ParamPoly
from hypercurrent.kaehler import CentralVector
from hypercurrent.lie import SimpleLieAlgebra, sl, sl2
from hypercurrent.parsing import ParseError
from hypercurrent.series import CoefficientTables

from conftest import HEXIC, QUARTIC

DATA = Path(__file__).parent / "data"
b = ParamPoly.var("b")


@pytest.fixture(scope="module")
def g():
    return sl2()


def br(left, right, alg, spec):
    A = parse_loop_element(left, alg, spec)
    B = parse_loop_element(right, alg, spec)
    return bracket(A, B, alg, spec, CoefficientTables(spec))


def test_loop_examples(g, hexic):
    # t d(t^-1) = -t^-1 dt and (e, f) = 4
    assert str(br("e⊗t", "f@t^-1", g, hexic)) == "h⊗1 - 4*ω0"
    assert br("h⊗1", "h⊗t^5", g, hexic).is_zero()
    # u u = p, and u d(u) = p'/2 dt is exact
    assert str(br("e⊗u", "f⊗u", g, hexic)) == "h⊗1 - 2*b*h⊗t^3 + h⊗t^6"


def test_odd_even_central_term(g, hexic):
    # u d(t^3) = 3 t^2 u dt, and t^2 u dt = (b/2) ω1 + (1/2) ω4
    res = br("e⊗u", "f⊗t^3", g, hexic)
    assert res.odd == {("h", 3): 1}
    assert res.central == CentralVector([0, 6 * b, 0, 0, 6, 0, 0])


def test_normalized_form_scales_center(hexic):
    # with the trace form (e, f) = 1 the same bracket carries a quarter of the center
    trace = SimpleLieAlgebra(["e", "h", "f"], sl2()._br, form={("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2})
    res = br("e⊗u", "f⊗t^3", trace, hexic)
    assert res.central == CentralVector([0, 3 * b / 2, 0, 0, Fraction(3, 2), 0, 0])


def test_parse_variants(g, hexic):
    X = parse_loop_element("2*e⊗t^2*u - (1/2)*h@(t + u)", g, hexic)
    assert X.odd == {("e", 2): 2, ("h", 0): Fraction(-1, 2)}
    assert X.even == {("h", 1): Fraction(-1, 2)}
    assert parse_loop_element("-e⊗t^-3", g, hexic).even == {("e", -3): -1}


@pytest.mark.parametrize("text", ["x⊗t", "e⊗t^", "e t", "e⊗t⊗t", "e⊗t +"])
def test_parse_errors(g, hexic, text):
    with pytest.raises(ParseError) as info:
        parse_loop_element(text, g, hexic)
    assert "^" in info.value.render()


def test_mismatched_curves(g, hexic, quartic):
    A = LoopElement.monomial(hexic, "e", 1)
    B = LoopElement.monomial(quartic, "f", 1)
    with pytest.raises(ValueError):
        bracket(A, B, g, hexic, CoefficientTables(hexic))
    with pytest.raises(ValueError):
        A + B


monomial_args = st.tuples(st.sampled_from(["e", "h", "f"]), st.integers(-7, 7), st.booleans())


@given(monomial_args, monomial_args)
def test_antisymmetry_and_grading(x, y):
    spec, alg = parse_curve(HEXIC), sl2()
    tables = CoefficientTables(spec)
    A = LoopElement.monomial(spec, *x)
    B = LoopElement.monomial(spec, *y)
    AB = bracket(A, B, alg, spec, tables)
    assert (AB + bracket(B, A, alg, spec, tables)).is_zero()
    parity = int(x[2]) ^ int(y[2])
    assert AB.parities() <= {parity}


def test_center_is_central(g, hexic):
    Z = LoopElement.central_element(hexic, CentralVector.basis(6, 3))
    A = LoopElement.monomial(hexic, "e", 2, True)
    assert bracket(Z, A, g, hexic, CoefficientTables(hexic)).is_zero()


@pytest.mark.parametrize("alg", [sl2(), sl(3)], ids=["sl2", "sl3"])
def test_jacobi(alg, hexic):
    rep = verify_jacobi(60, 3, 6, alg, hexic)
    assert rep.passed, rep.summary()


def test_jacobi_fails_without_form(g, quartic):
    rep = verify_jacobi(200, 0, 4, g, quartic, omit_form_in_odd_odd=True)
    assert not rep.passed
    assert "FAIL" in rep.summary() and rep.counterexample


def test_structure_table_golden(quartic, g):
    rows = structure_table(quartic, g, range(-2, 3))
    golden = json.loads((DATA / "quartic_structure_sl2_-2_2.json").read_text())
    assert rows == golden


def test_structure_table_spot_values(quartic, g):
    rows = structure_table(quartic, g, range(-1, 2), parities=("even",))
    by_key = {(r["left"]["x"], r["left"]["exp"], r["right"]["x"], r["right"]["exp"]): r["result"] for r in rows}
    hit = by_key[("e", 1, "f", -1)]
    assert hit["terms"] == [{"x": "h", "exp": 0, "parity": "even", "coefficient": "1"}]
    assert hit["central"]["omega0"] == "-4"
    assert by_key[("h", 1, "h", -1)]["central"]["omega0"] == "-8"
    csv_text = table_to_csv(rows)
    assert csv_text.splitlines()[0].startswith("left_x,left_exp,left_parity")
