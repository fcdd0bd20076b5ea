from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypercurrent.curve import CurveSpec, parse_curve
from hypercurrent.exact import HalfGridSeries, ParamPoly
from hypercurrent.series import (
    CoefficientTables,
    PCoeffTable,
    QFamilyError,
    build_ode_data,
    default_order,
    integral_p_series,
    integral_q_series,
    ode_residual_p,
    ode_residual_q,
    p_coeff,
    p_series,
    q_coeff,
    q_series,
    quartic_ode_residual,
)

b = ParamPoly.var("b")


def test_hand_computed_first_step(hexic):
    # (2k+n+2) P_{k,i} = -sum_j (3j+2k-2n+2) a_j P_{k-n+j,i} at k=2, i=-1:
    # 12 P = -(3*3 + 4 - 12 + 2) * (-2b) * P_{-1,-1} = 6b
    assert p_coeff(2, -1, hexic) == b / 2


def test_initial_block(hexic):
    for i in range(-6, 0):
        for k in range(-6, 0):
            assert p_coeff(k, i, hexic) == (1 if k == i else 0)


def test_printed_seed_is_degenerate(hexic):
    printed = PCoeffTable(hexic, initial="printed")
    assert all(printed(k, i).is_zero() for i in range(-6, 0) for k in range(-6, 30))


def test_hexic_support(hexic):
    # only a_0, a_3, a_6 are nonzero, so P_{k,-1} lives on k = 2 mod 3
    for k in range(0, 40):
        assert p_coeff(k, -1, hexic).is_zero() == (k % 3 != 2)


def test_q_needs_numeric_a0():
    spec = parse_curve("t^2 - 2*b*t + a")
    with pytest.raises(QFamilyError):
        q_coeff(3, -1, spec)


def test_q_hexic(hexic):
    assert q_series(-1, 14, hexic) == HalfGridSeries.from_terms({7: 1, 13: Fraction(1, 2)}, 14)
    assert q_coeff(1, -1, hexic) == 1
    assert q_coeff(1, -2, hexic) == 0


def test_resonant_index_quartic(quartic):
    # for even n the recursion factor 2k+n+2 vanishes at k = -(n+2)/2
    assert p_coeff(-3, -3, quartic) == 1
    assert integral_p_series(-3, 20, quartic) == p_series(-3, 20, quartic)


@pytest.mark.parametrize("fixture", ["quartic", "hexic"])
def test_routes_and_residuals(fixture, request):
    spec = request.getfixturevalue(fixture)
    order = default_order(spec)
    tables = CoefficientTables(spec)
    for i in range(-spec.n, 0):
        assert ode_residual_p(i, order, spec, tables).is_zero()
        assert ode_residual_q(i, order, spec, tables).is_zero()
        assert integral_p_series(i, order, spec, tables) == p_series(i, order, spec, tables)
        assert integral_q_series(i, order, spec, tables) == q_series(i, order, spec, tables)


def test_ode_data_fields(hexic):
    data = build_ode_data(-5, hexic)
    assert data.r == HalfGridSeries.from_terms({4: 10 * b, 1: -2})
    assert data.i == -5


def test_quartic_fourth_order(quartic):
    tables = CoefficientTables(quartic)
    assert all(quartic_ode_residual(m, quartic, tables).is_zero() for m in range(20))


def test_mismatched_tables(quartic, hexic):
    with pytest.raises(ValueError):
        p_series(-1, 10, hexic, CoefficientTables(quartic))


separable = st.lists(st.integers(-4, 4), min_size=2, max_size=4).map(
    lambda cs: CurveSpec(tuple(Fraction(c) for c in cs) + (Fraction(1),))
).filter(lambda s: s.a(0) != 0)


@given(separable)
def test_residuals_on_random_curves(spec):
    order = 2 * spec.n + 6
    tables = CoefficientTables(spec)
    for i in range(-spec.n, 0):
        assert ode_residual_p(i, order, spec, tables).is_zero()
        assert ode_residual_q(i, order, spec, tables).is_zero()
        assert integral_p_series(i, order, spec, tables) == p_series(i, order, spec, tables)


def test_quartic_z12_from_printed_lower_terms(quartic):
    # one recursion step at k = 8 (n = 4, a_0 = 1, a_2 = -2c) fed with the
    # printed z^8 and z^10 coefficients: 22 P_8 = -(10 P_4 - 32 c P_6)
    c = ParamPoly.var("c")
    p4 = ParamPoly.parse("(32*c^2 - 5)/35")
    p6 = ParamPoly.parse("(16/105)*c*(8*c^2 - 3)")
    by_hand = (c * p6 * 32 - p4 * 10) / 22
    assert by_hand == ParamPoly.parse("(2048*c^4 - 1248*c^2 + 75)/1155")
    assert p_coeff(8, -4, quartic) == by_hand
