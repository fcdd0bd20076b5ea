from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypercurrent.curve import RingElement, curve_validate, parse_curve
from hypercurrent.exact import ParamPoly
from hypercurrent.kaehler import (
    CentralVector,
    KaehlerOracle,
    OneForm,
    ReductionWindow,
    cocycle,
    default_window,
    oracle_quotient_dimension,
    oracle_reduce,
    parse_one_form,
    reduce_form,
)
from hypercurrent.parsing import ParseError
from hypercurrent.series import CoefficientTables

b = ParamPoly.var("b")


def om(n, **coords):
    v = CentralVector.zero(n)
    for name, c in coords.items():
        v = v + CentralVector.basis(n, int(name[1:]), c)
    return v


def test_linear_curve_by_hand():
    # p = t + 2: from d(t^{m+1} u) = 0 and 2p du = p' u dt one gets
    # (m + 3/2) U_m = -2m U_{m-1}, U_m = class of t^m u dt, U_{-1} = ω1
    spec = curve_validate(parse_curve("t + 2"))
    tables = CoefficientTables(spec)
    want = {-4: Fraction(1, 128), -3: Fraction(-1, 32), -2: Fraction(1, 4), -1: 1, 0: 0, 1: 0, 2: 0}
    for k, c in want.items():
        assert reduce_form(OneForm.monomial("udt", k), spec, tables) == om(1, w1=c)


def test_quadratic_by_hand():
    # -(m+3) U_{m+1} + b(2m+3) U_m - m U_{m-1} = 0 at m = -2
    spec = parse_curve("t^2 - 2*b*t + 1")
    got = reduce_form(parse_one_form("t^-3*u dt", spec), spec, CoefficientTables(spec))
    assert got == om(2, w1=Fraction(1, 2), w2=b / 2)


def test_basis_forms(hexic):
    tables = CoefficientTables(hexic)
    assert reduce_form(parse_one_form("t^-1 dt"), hexic, tables) == om(6, w0=1)
    for k in range(1, 7):
        assert reduce_form(OneForm.monomial("udt", -k), hexic, tables) == om(6, **{f"w{k}": 1})
    for k in (-3, 0, 2, 5):
        assert reduce_form(OneForm.monomial("dt", k), hexic, tables).is_zero()


def test_hexic_example(hexic):
    got = reduce_form(parse_one_form("t^2*u dt"), hexic, CoefficientTables(hexic))
    assert got == om(6, w1=b / 2, w4=Fraction(1, 2))
    assert str(got) == "1/2*b*ω1 + 1/2*ω4"
    assert got.to_json() == {"omega0": "0", "omega": ["1/2*b", "0", "0", "1/2", "0", "0"]}


@pytest.mark.parametrize("text", ["t^2*u", "t^2 dx", ""])
def test_form_parse_errors(text):
    with pytest.raises(ParseError):
        parse_one_form(text)


@pytest.mark.parametrize("curve, point", [
    ("t^6 - 2*b*t^3 + 1", {"b": Fraction(2)}),
    ("t^4 - 2*c*t^2 + 1", {"c": Fraction(3, 7)}),
    ("t^5 + 3*t^2 - t + 2", {}),
    ("t^2 - 2*b*t + 1", {"b": Fraction(5)}),
])
def test_quotient_dimension(curve, point):
    spec = parse_curve(curve)
    assert oracle_quotient_dimension(ReductionWindow(3 * spec.n, point), spec) == spec.n + 1


def test_oracle_agrees_on_all_monomials(hexic):
    point = {"b": Fraction(2)}
    oracle = KaehlerOracle(hexic, ReductionWindow(18, point))
    tables = CoefficientTables(hexic)
    for kind in ("dt", "udt", "du"):
        for k in range(-18, 19):
            form = OneForm.monomial(kind, k)
            assert oracle.reduce(form) == reduce_form(form, hexic, tables).substitute(point)


def test_oracle_needs_numbers(hexic):
    with pytest.raises(ValueError):
        KaehlerOracle(hexic, ReductionWindow(18))


def test_default_window_covers_exponent(hexic):
    w = default_window(hexic, 40)
    assert w.N >= 40
    form = OneForm.monomial("udt", 40)
    tables = CoefficientTables(hexic)
    w = default_window(hexic, 40, {"b": Fraction(1, 3)})
    assert oracle_reduce(form, w, hexic) == reduce_form(form, hexic, tables).substitute({"b": Fraction(1, 3)})


ring_monomials = st.builds(
    lambda k, odd, c: RingElement.u_monomial(k, c) if odd else RingElement.t_power(k, c),
    st.integers(-8, 8), st.booleans(), st.integers(-3, 3).filter(bool),
)


@given(ring_monomials, ring_monomials, ring_monomials)
def test_cocycle_identities(f, g, h):
    from hypercurrent.curve import ring_mul

    spec = parse_curve("t^4 - 2*c*t^2 + 1")
    tables = CoefficientTables(spec)
    assert (cocycle(f, g, spec, tables) + cocycle(g, f, spec, tables)).is_zero()
    cyc = (cocycle(ring_mul(f, g, spec), h, spec, tables)
           + cocycle(ring_mul(g, h, spec), f, spec, tables)
           + cocycle(ring_mul(h, f, spec), g, spec, tables))
    assert cyc.is_zero()


def test_cocycle_of_constants_vanishes(hexic):
    one = RingElement.one()
    assert cocycle(one, RingElement.u_monomial(3), hexic, CoefficientTables(hexic)).is_zero()
