"""Exact computations for central extensions of hyperelliptic current algebras.

The coordinate ring is ``R = C[t, t^-1, u] / (u^2 - p(t))`` with ``p`` monic,
separable and ``p(0) != 0``.  Everything is exact over the rationals, with
optional symbolic parameters in the coefficients of ``p``.
"""

from .exact import HalfGridSeries, LaurentPoly, ParamPoly, poly_arith, poly_eval, series_arith, series_sqrt_newton
from .parsing import ParseError
from .curve import CurveError, CurveSpec, RingElement, curve_validate, parse_curve, parse_ring_element, ring_mul
from .series import (
    CoefficientTables,
    OdeData,
    build_ode_data,
    integral_p_series,
    integral_q_series,
    ode_residual_p,
    ode_residual_q,
    p_coeff,
    p_series,
    q_coeff,
    q_series,
)
from .faa import bell, bell_multinomial, faa_series, neg32_series, sqrt_series
from .kaehler import (
    CentralVector,
    KaehlerOracle,
    OneForm,
    ReductionWindow,
    cocycle,
    oracle_quotient_dimension,
    oracle_reduce,
    parse_one_form,
    reduce_form,
)
from .lie import SimpleLieAlgebra, algebra_from_selector, killing_form, sl, sl2
from .current import LoopElement, bracket, parse_loop_element, structure_table, verify_jacobi

__version__ = "0.1.0"
