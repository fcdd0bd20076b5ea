from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypercurrent.exact import HalfGridSeries, LaurentPoly, ParamPoly, format_rational
from hypercurrent.parsing import ParseError

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
names = st.sampled_from(["a", "b", "c"])


@st.composite
def polys(draw, max_terms=4):
    out = ParamPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        term = ParamPoly.const(draw(rationals))
        for _ in range(draw(st.integers(0, 3))):
            term = term * ParamPoly.var(draw(names))
        out = out + term
    return out


points = st.fixed_dictionaries({n: rationals for n in "abc"})


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys(), polys())
def test_product_rule(p, q):
    assert (p * q).diff("a") == p.diff("a") * q + p * q.diff("a")


@given(polys())
def test_canonical_string_round_trips(p):
    assert ParamPoly.parse(str(p)) == p


def test_canonical_order():
    b = ParamPoly.var("b")
    assert str(b * (b * b * 5 - 1) / 8) == "5/8*b^3 - 1/8*b"
    assert str(ParamPoly.parse("(1/16)*(21*b^5 - 14*b^3 + b)")) == "21/16*b^5 - 7/8*b^3 + 1/16*b"
    assert str(ParamPoly()) == "0"


def test_evaluate_reports_missing_parameter():
    with pytest.raises(ValueError, match="b"):
        ParamPoly.parse("a + b").evaluate({"a": 1})


def test_parse_rejects_division_by_parameter():
    with pytest.raises(ParseError):
        ParamPoly.parse("1/b")


def test_format_rational():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(6, 3)) == "2"


def test_laurent_arithmetic():
    p = LaurentPoly.parse("t^6 - 2*b*t^3 + 1")
    assert str(p) == "t^6 - 2*b*t^3 + 1"
    assert p.degree() == 6 and p.low_degree() == 0
    q = LaurentPoly.parse("t^-2 + t")
    assert (p * q).coeff(4) == ParamPoly.parse("1 - 2*b")
    assert (p * q).coeff(7) == 1
    assert (p * q).coeff(-2) == 1
    assert p.derivative().coeff(2) == ParamPoly.parse("-6*b")
    assert p.shift(-3).low_degree() == -3


@given(st.lists(rationals, min_size=1, max_size=6), st.lists(rationals, min_size=1, max_size=6))
def test_series_product_matches_convolution(xs, ys):
    a = HalfGridSeries.from_terms(dict(enumerate(xs)), 8)
    b = HalfGridSeries.from_terms(dict(enumerate(ys)), 8)
    prod = a * b
    for m in range(8):
        want = sum((xs[i] * ys[m - i] for i in range(m + 1) if i < len(xs) and m - i < len(ys)), Fraction(0))
        assert prod.coeff(m) == want


def test_series_order_tracking():
    a = HalfGridSeries.from_terms({0: 1, 1: 1}, 5)
    b = HalfGridSeries.from_terms({2: 1}, 4)
    # min(5 + val(b), 4 + val(a))
    assert (a * b).order == 4
    assert (a + b).order == 4
    with pytest.raises(ValueError):
        (a + b).coeff(4)


def test_half_integer_exponents():
    z = HalfGridSeries.monomial(Fraction(1, 2))
    assert (z * z) == HalfGridSeries.monomial(1)
    assert z.valuation() == 1  # measured in half units


def binomial_series(alpha, m):
    """Coefficient of x^m in (1 + x)^alpha."""
    out = Fraction(1)
    for j in range(m):
        out = out * (alpha - j) / (j + 1)
    return out


def test_newton_sqrt_against_binomial_series():
    one_plus_z = HalfGridSeries.from_terms({0: 1, 1: 1})
    root = one_plus_z.sqrt(12)
    for m in range(12):
        assert root.coeff(m) == binomial_series(Fraction(1, 2), m)
    inv = one_plus_z.inverse_sqrt(12)
    for m in range(12):
        assert inv.coeff(m) == binomial_series(Fraction(-1, 2), m)


@given(st.lists(rationals, min_size=1, max_size=5))
def test_sqrt_squares_back(tail):
    a = HalfGridSeries.from_terms({0: 1, **{k + 1: v for k, v in enumerate(tail)}})
    r = a.sqrt(10)
    assert r * r == a.truncate(10)


def test_integrate_and_differentiate():
    a = HalfGridSeries.from_terms({0: 3, Fraction(3, 2): 2, 4: 1}, 8)
    assert a.integrate().differentiate() == a.truncate(7)
    with pytest.raises(ValueError):
        HalfGridSeries.from_terms({-1: 1}).integrate()


def test_json_shape():
    a = HalfGridSeries.from_terms({Fraction(1, 2): ParamPoly.parse("b/2"), 3: 1})
    assert a.to_json() == [{"exponent": "1/2", "coefficient": "1/2*b"}, {"exponent": "3", "coefficient": "1"}]
