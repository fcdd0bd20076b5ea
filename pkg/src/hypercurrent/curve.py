"""The coordinate ring ``R = C[t, t^-1, u | u^2 = p(t)]``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .exact import LaurentPoly, ParamPoly
from .parsing import ParseError, parse_expression

__all__ = [
    "CurveError",
    "CurveSpec",
    "RingElement",
    "Pairing",
    "parse_curve",
    "curve_validate",
    "parse_ring_element",
    "ring_mul",
    "ring_derivative_pairing",
]


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class CurveSpec:
    """``p(t) = a_0 + a_1 t + ... + a_n t^n`` with ``ParamPoly`` coefficients."""

    coeffs: tuple  # a_0, ..., a_n

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(ParamPoly.coerce(c) for c in self.coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def a(self, j: int) -> ParamPoly:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return ParamPoly()

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(sorted({p for c in self.coeffs for p in c.params}))

    def is_numeric(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    @property
    def p(self) -> LaurentPoly:
        return LaurentPoly(dict(enumerate(self.coeffs)))

    @property
    def p_prime(self) -> LaurentPoly:
        return self.p.derivative()

    def instantiate(self, point) -> "CurveSpec":
        return CurveSpec(tuple(c.substitute(point) for c in self.coeffs))

    def __str__(self):
        return str(self.p)


def parse_curve(text: str) -> CurveSpec:
    """Parse ``p(t)`` from text such as ``"t^6 - 2*b*t^3 + 1"``."""
    raw = parse_expression(text)
    coeffs: dict[int, ParamPoly] = {}
    for (t, u, params), c in raw.items():
        if u:
            raise ParseError(f"p(t) may not contain u: {text!r}")
        if t < 0:
            raise ParseError(f"p(t) must be a polynomial, found t^{t}: {text!r}")
        coeffs[t] = coeffs.get(t, ParamPoly()) + ParamPoly({params: c})
    coeffs = {k: v for k, v in coeffs.items() if v}
    if not coeffs:
        raise CurveError("p(t) is zero")
    n = max(coeffs)
    return CurveSpec(tuple(coeffs.get(j, ParamPoly()) for j in range(n + 1)))


def _dense_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of dense rational polynomials (index = degree)."""

    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for k, c in enumerate(b):
                r[k + shift] -= q * c
            r = trim(r)
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


def curve_validate(spec: CurveSpec) -> CurveSpec:
    """Check ``a_n = 1``, ``a_0 != 0`` and, for numeric ``p``, separability.

    Separability of symbolic ``p`` is the caller's responsibility.
    """
    if spec.n < 1:
        raise CurveError("p(t) must have positive degree")
    if spec.a(spec.n) != 1:
        raise CurveError(f"leading coefficient must be 1, got {spec.a(spec.n)}")
    if spec.a(0).is_zero():
        raise CurveError("constant term a_0 must be nonzero")
    if spec.is_numeric():
        p = [c.constant_value() for c in spec.coeffs]
        dp = [k * p[k] for k in range(1, len(p))]
        g = _dense_gcd(p, dp)
        if len(g) > 1:
            raise CurveError(f"p(t) = {spec} has a repeated root (gcd(p, p') has degree {len(g) - 1})")
    return spec


@dataclass(frozen=True)
class RingElement:
    """``even + odd * u`` with ``LaurentPoly`` parts."""

    even: LaurentPoly = LaurentPoly()
    odd: LaurentPoly = LaurentPoly()

    @classmethod
    def one(cls) -> "RingElement":
        return cls(LaurentPoly.monomial(0))

    @classmethod
    def t_power(cls, k: int, c=1) -> "RingElement":
        return cls(LaurentPoly.monomial(k, c))

    @classmethod
    def u_monomial(cls, k: int, c=1) -> "RingElement":
        """``c * t^k * u``."""
        return cls(LaurentPoly(), LaurentPoly.monomial(k, c))

    def __add__(self, other):
        return RingElement(self.even + other.even, self.odd + other.odd)

    def __neg__(self):
        return RingElement(-self.even, -self.odd)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RingElement":
        return RingElement(self.even * c, self.odd * c)

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.even:
            parts.append(str(self.even))
        if self.odd:
            odd = self.odd
            parts.append("u" if odd == LaurentPoly.monomial(0) else f"({odd})*u")
        return " + ".join(parts)


def ring_mul(x: RingElement, y: RingElement, spec: CurveSpec) -> RingElement:
    """``(f1 + g1 u)(f2 + g2 u) = (f1 f2 + g1 g2 p) + (f1 g2 + f2 g1) u``."""
    even = x.even * y.even + x.odd * y.odd * spec.p
    odd = x.even * y.odd + x.odd * y.even
    return RingElement(even, odd)


def parse_ring_element(text: str, spec: CurveSpec | None = None) -> RingElement:
    """Parse e.g. ``"(3/2)*t^-2 + b*t^3*u"``; ``u^2`` is reduced with ``spec``."""
    raw = parse_expression(text)
    result = RingElement()
    for (t, u, params), c in raw.items():
        coeff = ParamPoly({params: c})
        term = RingElement.t_power(t, coeff) if u % 2 == 0 else RingElement.u_monomial(t, coeff)
        if u >= 2:
            if spec is None:
                raise ParseError(f"u^{u} needs a curve to reduce: {text!r}")
            p_pow = RingElement(spec.p)
            for _ in range(u // 2):
                term = ring_mul(term, p_pow, spec)
        result = result + term
    return result


class Pairing(NamedTuple):
    """One monomial term ``weight * t^i (u) d(t^j (u))`` of ``f dg``."""

    weight: ParamPoly
    i: int
    f_odd: bool
    j: int
    g_odd: bool


def ring_derivative_pairing(f: RingElement, g: RingElement, spec: CurveSpec | None = None) -> list[Pairing]:
    """Expand ``f dg`` bilinearly into monomial pairings."""
    out = []
    for f_odd, fpart in ((False, f.even), (True, f.odd)):
        for g_odd, gpart in ((False, g.even), (True, g.odd)):
            for i, cf in fpart.items():
                for j, cg in gpart.items():
                    out.append(Pairing(cf * cg, i, f_odd, j, g_odd))
    return out
