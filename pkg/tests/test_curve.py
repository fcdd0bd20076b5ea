import pytest
from hypothesis import given, strategies as st

from hypercurrent.curve import (
    CurveError,
    RingElement,
    curve_validate,
    parse_curve,
    parse_ring_element,
    ring_derivative_pairing,
    ring_mul,
)
from hypercurrent.exact import LaurentPoly, ParamPoly
from hypercurrent.parsing import ParseError

from conftest import HEXIC


def test_parse_hexic(hexic):
    assert hexic.n == 6
    assert hexic.a(3) == ParamPoly.parse("-2*b")
    assert hexic.a(0) == 1 and hexic.a(6) == 1
    assert hexic.params == ("b",)
    assert str(hexic) == HEXIC


@pytest.mark.parametrize("text, msg", [
    ("t^3", "a_0"),
    ("2*t^2 + 1", "leading"),
    ("t^2 - 2*t + 1", "repeated root"),
    ("7", "degree"),
])
def test_invalid_curves(text, msg):
    with pytest.raises(CurveError, match=msg):
        curve_validate(parse_curve(text))


def test_symbolic_curve_skips_separability():
    # separability depends on b, so it is only checked once b is known
    spec = curve_validate(parse_curve("t^2 - 2*b*t + 1"))
    with pytest.raises(CurveError):
        curve_validate(spec.instantiate({"b": 1}))


@pytest.mark.parametrize("text", ["t^2 + u", "t^-1 + 1", "t^2 +* 1"])
def test_curve_parse_errors(text):
    with pytest.raises(ParseError):
        parse_curve(text)


def test_parse_error_caret():
    with pytest.raises(ParseError) as info:
        parse_curve("t^2 + (1")
    assert "^" in info.value.render()


def test_u_squared_reduces(hexic):
    u = RingElement.u_monomial(0)
    assert ring_mul(u, u, hexic) == RingElement(hexic.p)
    assert parse_ring_element("u^2", hexic) == RingElement(hexic.p)
    assert parse_ring_element("t^-1*u^3", hexic) == RingElement(odd=hexic.p.shift(-1))


monomials = st.builds(
    lambda k, odd, c: RingElement.u_monomial(k, c) if odd else RingElement.t_power(k, c),
    st.integers(-5, 5), st.booleans(), st.integers(-3, 3).filter(bool),
)


@given(monomials, monomials, monomials)
def test_ring_is_commutative_and_associative(x, y, z):
    spec = parse_curve(HEXIC)
    assert ring_mul(x, y, spec) == ring_mul(y, x, spec)
    assert ring_mul(ring_mul(x, y, spec), z, spec) == ring_mul(x, ring_mul(y, z, spec), spec)


def test_pairing_expansion():
    f = parse_ring_element("2*t + t^-1*u")
    g = parse_ring_element("3*u")
    pairs = ring_derivative_pairing(f, g)
    assert sorted((int(p.weight.constant_value()), p.i, p.f_odd, p.j, p.g_odd) for p in pairs) == [
        (3, -1, True, 0, True),
        (6, 1, False, 0, True),
    ]


def test_ring_element_str():
    assert str(parse_ring_element("t^3*u + 1")) == "1 + (t^3)*u"
    assert str(RingElement()) == "0"
    assert RingElement.t_power(2).even == LaurentPoly.monomial(2)
