"""The P and Q coefficient families and their generating series.

Index conventions
-----------------
``P_{k,i}`` is defined for ``k >= -n`` and ``-n <= i <= -1`` and is the
coefficient of ``omega_{-i}`` in the class of ``t^k u dt``.  The generating
series is ``P_i(z) = sum_k P_{k,i} z^(k+n)``, so the coefficient of ``z^m`` is
``P_{m-n,i}`` ("series index" ``m``).

``Q_{m,i}`` (``m >= 1``) is the coefficient of ``omega_{-i}`` in the class of
``t^-m u dt``, with ``Q_i(z) = sum_{m>=1} Q_{m,i} z^(m+n)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .curve import CurveSpec
from .exact import HalfGridSeries, LaurentPoly, ParamPoly
from .faa import neg32_series, sqrt_series

__all__ = [
    "QFamilyError",
    "PCoeffTable",
    "QCoeffTable",
    "CoefficientTables",
    "default_order",
    "p_coeff",
    "q_coeff",
    "p_series",
    "q_series",
    "OdeData",
    "build_ode_data",
    "integral_p_series",
    "integral_q_series",
    "ode_residual_p",
    "ode_residual_q",
    "quartic_parameter",
    "quartic_ode_residual",
    "quartic_recursion_check",
]


class QFamilyError(ValueError):
    pass


def default_order(spec: CurveSpec) -> int:
    return 4 * spec.n + 8


def _check_i(i: int, n: int):
    if not -n <= i <= -1:
        raise ValueError(f"family index i={i} outside [-{n}, -1]")


class PCoeffTable:
    """Memoized ``P_{k,i}`` from the forward recursion

    ``(2k+n+2) P_{k,i} = -sum_{j<n} (3j+2k-2n+2) a_j P_{k-n+j,i}``  (k >= 0)

    seeded with ``P_{k,i} = delta_{k,i}`` on ``-n <= k <= -1``.  Passing
    ``initial="printed"`` seeds with ``delta_{k,-i}`` instead, which is zero on
    that whole range; it exists only to demonstrate that the family then
    vanishes identically.
    """

    def __init__(self, spec: CurveSpec, initial: str = "corrected"):
        if initial not in ("corrected", "printed"):
            raise ValueError(f"unknown initial condition {initial!r}")
        self.spec = spec
        self.initial = initial
        self._rows: dict[int, list[ParamPoly]] = {}
        self._lock = threading.Lock()

    def _seed(self, i: int) -> list[ParamPoly]:
        n = self.spec.n
        one, zero = ParamPoly.const(1), ParamPoly()
        target = i if self.initial == "corrected" else -i
        return [one if k == target else zero for k in range(-n, 0)]

    def __call__(self, k: int, i: int) -> ParamPoly:
        n = self.spec.n
        _check_i(i, n)
        if k < -n:
            raise ValueError(f"P_{{k,i}} is defined for k >= -{n}, got k={k}")
        row = self._rows.get(i)
        if row is None or len(row) <= k + n:
            with self._lock:
                row = self._rows.setdefault(i, self._seed(i))
                a = self.spec.coeffs
                while len(row) <= k + n:
                    kk = len(row) - n
                    acc = ParamPoly()
                    for j in range(n):
                        if a[j]:
                            acc = acc + a[j] * row[kk - n + j + n] * (3 * j + 2 * kk - 2 * n + 2)
                    row.append(-acc / (2 * kk + n + 2))
        return row[k + n]


class QCoeffTable:
    """Memoized ``Q_{m,i}`` from

    ``-2(m-1) a_0 Q_{m,i} = -sum_{j=1}^n (3j-2m+2) a_j Q_{m-j,i}``  (m >= n+1)

    seeded with ``Q_{m,i} = delta_{m,-i}`` on ``1 <= m <= n``.  Needs a numeric
    nonzero ``a_0``.
    """

    def __init__(self, spec: CurveSpec):
        a0 = spec.a(0)
        if not a0.is_constant() or a0.is_zero():
            raise QFamilyError("Q-family requires numeric a0 (a nonzero rational constant)")
        self.spec = spec
        self._a0 = a0.constant_value()
        self._rows: dict[int, list[ParamPoly]] = {}
        self._lock = threading.Lock()

    def __call__(self, m: int, i: int) -> ParamPoly:
        n = self.spec.n
        _check_i(i, n)
        if m < 1:
            raise ValueError(f"Q_{{m,i}} is defined for m >= 1, got m={m}")
        row = self._rows.get(i)
        if row is None or len(row) < m:
            with self._lock:
                one, zero = ParamPoly.const(1), ParamPoly()
                row = self._rows.setdefault(i, [one if mm == -i else zero for mm in range(1, n + 1)])
                a = self.spec.coeffs
                while len(row) < m:
                    mm = len(row) + 1
                    acc = ParamPoly()
                    for j in range(1, n + 1):
                        if a[j]:
                            acc = acc + a[j] * row[mm - j - 1] * (3 * j - 2 * mm + 2)
                    row.append(acc / (2 * (mm - 1) * self._a0))
        return row[m - 1]


class CoefficientTables:
    """P and Q tables for one curve; the Q table is built on first use."""

    def __init__(self, spec: CurveSpec):
        self.spec = spec
        self.p = PCoeffTable(spec)
        self._q = None

    @property
    def q(self) -> QCoeffTable:
        if self._q is None:
            self._q = QCoeffTable(self.spec)
        return self._q


def _tables(spec, tables):
    if tables is None:
        return CoefficientTables(spec)
    if tables.spec != spec:
        raise ValueError("coefficient tables belong to a different curve")
    return tables


def p_coeff(k: int, i: int, spec: CurveSpec, tables: CoefficientTables | None = None) -> ParamPoly:
    return _tables(spec, tables).p(k, i)


def q_coeff(m: int, i: int, spec: CurveSpec, tables: CoefficientTables | None = None) -> ParamPoly:
    return _tables(spec, tables).q(m, i)


def p_series(i: int, order: int, spec: CurveSpec, tables=None) -> HalfGridSeries:
    """``P_i(z)`` truncated below ``z^order``."""
    tables = _tables(spec, tables)
    n = spec.n
    return HalfGridSeries.from_terms({m: tables.p(m - n, i) for m in range(order)}, order)


def q_series(i: int, order: int, spec: CurveSpec, tables=None) -> HalfGridSeries:
    """``Q_i(z)`` truncated below ``z^order``."""
    tables = _tables(spec, tables)
    n = spec.n
    return HalfGridSeries.from_terms({m + n: tables.q(m, i) for m in range(1, order - n)}, order)


@dataclass(frozen=True)
class OdeData:
    """Polynomial data of the two first-order linear ODEs for family index ``i``.

    ``q_even = z p_bar' + (n-2) p_bar`` and ``q_odd = z p_poly' + 2(n+1) p_poly``.
    ``s`` is ``None`` when ``a_0`` is symbolic.
    """

    i: int
    p_bar: HalfGridSeries
    p_poly: HalfGridSeries
    q_even: HalfGridSeries
    q_odd: HalfGridSeries
    r: HalfGridSeries
    s: HalfGridSeries | None


def _p_bar(spec: CurveSpec) -> LaurentPoly:
    n = spec.n
    return LaurentPoly({n - j: spec.a(j) for j in range(n + 1)})


def build_ode_data(i: int, spec: CurveSpec, tables=None) -> OdeData:
    tables = _tables(spec, tables)
    n = spec.n
    _check_i(i, n)
    a = spec.a
    p_bar = HalfGridSeries.from_laurent(_p_bar(spec))
    p_poly = HalfGridSeries.from_laurent(spec.p)
    z = HalfGridSeries.monomial(1)
    q_even = z * p_bar.differentiate() + p_bar * (n - 2)
    q_odd = z * p_poly.differentiate() + p_poly * (2 * (n + 1))

    r = {}
    for j in range(n + 1):
        for k in range(-j, 0):
            w = 3 * j + 2 * k - 2 * n + 2
            if w and a(j):
                r[n + k] = r.get(n + k, ParamPoly()) + a(j) * tables.p(k - n + j, i) * w

    s = None
    a0 = a(0)
    if a0.is_constant() and a0:
        s = {}
        for m in range(1, n + 1):
            acc = ParamPoly()
            for j in range(m):
                w = 3 * j - 2 * m + 2
                if w and a(j):
                    acc = acc + a(j) * tables.q(m - j, i) * w
            s[m + n] = -acc
        s = HalfGridSeries.from_terms(s)
    return OdeData(i, p_bar, p_poly, q_even, q_odd, HalfGridSeries.from_terms(r), s)


def integral_p_series(i: int, order: int, spec: CurveSpec, tables=None) -> HalfGridSeries:
    """``P_i(z) = z^((n-2)/2) sqrt(p_bar) * int R_i / (2 z^(n/2) p_bar^(3/2)) dz``.

    The square root and ``p_bar^(-3/2)`` are Faa di Bruno expansions; the
    integral is taken term by term.  The homogeneous solution
    ``z^((n-2)/2) sqrt(p_bar)`` is fixed by the coefficient of ``z^((n-2)/2)``:
    ``P_{-(n+2)/2, i}`` for even ``n`` and zero for odd ``n``.  Negative powers
    in the antiderivative also feed that coefficient, so the constant is solved
    for rather than read off.
    """
    tables = _tables(spec, tables)
    n = spec.n
    data = build_ode_data(i, spec, tables)
    p_bar = _p_bar(spec)
    integrand = (data.r * neg32_series(p_bar, order)).shift(Fraction(-n, 2)) * Fraction(1, 2)
    root = sqrt_series(p_bar, order)
    lead = Fraction(n - 2, 2)
    result = (root * integrand.integrate()).shift(lead)
    target = tables.p(-(n + 2) // 2, i) if n % 2 == 0 else 0
    result = result + (root * (target - result.coeff(lead))).shift(lead)
    if result.half_order is not None and result.half_order < 2 * order:
        raise ArithmeticError("internal truncation too short")  # pragma: no cover
    out = result.truncate(order)
    stray = [e for e, v in out.items() if not isinstance(e, int)]
    if stray:
        raise ArithmeticError(f"non-integral exponents {stray} survived in P_{i}(z)")
    return out


def integral_q_series(i: int, order: int, spec: CurveSpec, tables=None) -> HalfGridSeries:
    """``Q_i(z) = z^(n+1) sqrt(P) * int S_i / (2 z^(n+2) P^(3/2)) dz``.

    ``P(z) = sum a_j z^j`` is normalized to ``P/a_0`` so the expansions start
    at 1; the factor ``1/a_0`` this produces is applied to the integrand.  The
    constant of integration makes the ``z^(n+1)`` coefficient equal ``Q_{1,i}``
    once the negative powers of the antiderivative have contributed there.
    """
    tables = _tables(spec, tables)
    n = spec.n
    data = build_ode_data(i, spec, tables)
    if data.s is None:
        raise QFamilyError("Q-family requires numeric a0 (a nonzero rational constant)")
    a0 = spec.a(0).constant_value()
    p_tilde = spec.p * (1 / a0)
    integrand = (data.s * neg32_series(p_tilde, order)).shift(-(n + 2)) * Fraction(1, 2 * a0)
    root = sqrt_series(p_tilde, order)
    result = (root * integrand.integrate()).shift(n + 1)
    result = result + (root * (tables.q(1, i) - result.coeff(n + 1))).shift(n + 1)
    return result.truncate(order)


def ode_residual_p(i: int, order: int, spec: CurveSpec, tables=None) -> HalfGridSeries:
    """``2 z p_bar P_i' - q_even P_i - R_i``; identically zero below ``order``."""
    tables = _tables(spec, tables)
    data = build_ode_data(i, spec, tables)
    P = p_series(i, order, spec, tables)
    z2 = HalfGridSeries.monomial(1, 2)
    return (z2 * data.p_bar * P.differentiate() - data.q_even * P - data.r).truncate(order)


def ode_residual_q(i: int, order: int, spec: CurveSpec, tables=None) -> HalfGridSeries:
    """``2 z P Q_i' - q_odd Q_i - S_i``; identically zero below ``order``."""
    tables = _tables(spec, tables)
    data = build_ode_data(i, spec, tables)
    if data.s is None:
        raise QFamilyError("Q-family requires numeric a0 (a nonzero rational constant)")
    Q = q_series(i, order, spec, tables)
    z2 = HalfGridSeries.monomial(1, 2)
    return (z2 * data.p_poly * Q.differentiate() - data.q_odd * Q - data.s).truncate(order)


def quartic_parameter(spec: CurveSpec) -> str:
    """Name ``c`` of a curve ``t^4 - 2 c t^2 + 1``; raises for any other curve."""
    ok = spec.n == 4 and spec.a(0) == 1 and spec.a(4) == 1 and not spec.a(1) and not spec.a(3)
    a2 = spec.a(2)
    if ok and len(a2.params) == 1:
        c = a2.params[0]
        if a2 == ParamPoly.var(c) * -2:
            return c
    raise ValueError(f"expected a quartic of the form t^4 - 2*c*t^2 + 1, got {spec}")


def quartic_ode_residual(m: int, spec: CurveSpec, tables=None) -> ParamPoly:
    """Left side of the fourth-order ODE in ``c`` for ``P_m = [z^m] P_{-4}(c, z)``."""
    c = quartic_parameter(spec)
    tables = _tables(spec, tables)
    P = tables.p(m - 4, -4)
    d1 = P.diff(c)
    d2 = d1.diff(c)
    d3 = d2.diff(c)
    d4 = d3.diff(c)
    cv = ParamPoly.var(c)
    c2 = cv * cv
    return (
        (c2 - 1) ** 2 * d4 * 16
        + cv * (c2 - 1) * d3 * 160
        - (c2 * (m * m - 4 * m - 46) - (m * m - 4 * m - 22)) * d2 * 8
        - cv * d1 * (24 * (m * m - 4 * m - 6))
        + P * ((m - 4) ** 2 * m * m)
    )


def quartic_recursion_check(k: int, spec: CurveSpec, tables=None) -> bool:
    """Check ``(6+2k) P_{k+4} = 4kc P_{k+2} - 2(k-3) P_k`` in series indexing."""
    c = quartic_parameter(spec)
    tables = _tables(spec, tables)

    def P(m):
        return tables.p(m - 4, -4) if m >= 0 else ParamPoly()

    lhs = P(k + 4) * (6 + 2 * k)
    rhs = ParamPoly.var(c) * P(k + 2) * (4 * k) - P(k) * (2 * (k - 3))
    return lhs == rhs
