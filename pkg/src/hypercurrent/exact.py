"""Exact arithmetic substrate.

Scalars are :class:`fractions.Fraction`.  On top of that live

* :class:`ParamPoly` -- multivariate polynomials in named parameters,
* :class:`LaurentPoly` -- Laurent polynomials in ``t`` over ``ParamPoly``,
* :class:`HalfGridSeries` -- truncated series in ``z`` whose exponents lie on
  the grid ``(1/2)Z``.

Every value is immutable; all operations return new objects.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .parsing import ParseError, parse_expression

__all__ = [
    "Fraction",
    "ParamPoly",
    "LaurentPoly",
    "HalfGridSeries",
    "format_rational",
    "parse_rational",
    "poly_arith",
    "poly_eval",
    "series_arith",
    "series_sqrt_newton",
    "series_integrate",
    "series_differentiate",
]

Scalar = Union[int, Fraction]
Monomial = tuple  # sorted ((name, exp), ...)


def format_rational(x: Scalar) -> str:
    """Canonical ``p/q`` text, with ``q`` omitted when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for name, e in b:
        out[name] = out.get(name, 0) + e
    return tuple(sorted(out.items()))


def _mono_key(m: Monomial):
    # descending total degree, then descending exponent vector in name order
    return (-sum(e for _, e in m), tuple((name, -e) for name, e in m))


def _mono_str(m: Monomial) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


class ParamPoly:
    """Polynomial in named parameters with rational coefficients.

    Terms are stored as ``{monomial: Fraction}`` with no zero coefficients.
    Parameter names are kept in sorted order inside each monomial, so two
    polynomials over different name sets combine without any alignment step.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self._terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "ParamPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as ParamPoly")

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """Parse a parameter polynomial such as ``"(32*c^2 - 5)/35"``."""
        raw = parse_expression(text)
        terms = {}
        for (t, u, params), c in raw.items():
            if t or u:
                raise ParseError(f"'t' and 'u' are not parameters: {text!r}")
            terms[params] = c
        return cls(terms)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: _mono_key(kv[0]))

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(sorted({name for m in self._terms for name, _ in m}))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((), Fraction(0))

    def degree(self, name: str | None = None) -> int:
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e for _, e in m) for m in self._terms)
        return max(dict(m).get(name, 0) for m in self._terms)

    def __bool__(self):
        return bool(self._terms)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ParamPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamPoly()
            return ParamPoly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return ParamPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ParamPoly):
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division of ParamPoly by zero")
        return self * (1 / Fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of ParamPoly are not supported")
        result = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus and evaluation -------------------------------------------
    def diff(self, name: str) -> "ParamPoly":
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(name, 0)
            if not e:
                continue
            if e == 1:
                del d[name]
            else:
                d[name] = e - 1
            out[tuple(sorted(d.items()))] = c * e
        return ParamPoly(out)

    def substitute(self, point: Mapping[str, Scalar]) -> "ParamPoly":
        """Bind some parameters to rationals, leaving the rest symbolic."""
        out: dict = {}
        for m, c in self._terms.items():
            rest = []
            for name, e in m:
                if name in point:
                    c = c * Fraction(point[name]) ** e
                else:
                    rest.append((name, e))
            key = tuple(rest)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return ParamPoly(out)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        for name in self.params:
            if name not in point:
                raise ValueError(f"no value bound for parameter {name!r}")
        return self.substitute(point).constant_value()

    # text ---------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mag = abs(c)
            if not m:
                body = format_rational(mag)
            elif mag == 1:
                body = _mono_str(m)
            else:
                body = f"{format_rational(mag)}*{_mono_str(m)}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"


def poly_arith(a: ParamPoly, b: ParamPoly, op: str) -> ParamPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def poly_eval(a: ParamPoly, point: Mapping[str, Scalar]) -> Fraction:
    return ParamPoly.coerce(a).evaluate(point)


def _wrap(c: ParamPoly) -> str:
    s = str(c)
    return f"({s})" if len(c.terms) > 1 else s


class LaurentPoly:
    """Finitely supported map ``t``-exponent -> ``ParamPoly``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        out = {}
        for k, v in (coeffs or {}).items():
            v = ParamPoly.coerce(v)
            if v:
                out[int(k)] = v
        self._c = out

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        raw = parse_expression(text)
        out: dict = {}
        for (t, u, params), c in raw.items():
            if u:
                raise ParseError(f"'u' is not allowed in a Laurent polynomial: {text!r}")
            out[t] = out.get(t, ParamPoly()) + ParamPoly({params: c})
        return cls(out)

    @property
    def coeffs(self) -> dict[int, ParamPoly]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def coeff(self, k: int) -> ParamPoly:
        return self._c.get(k, ParamPoly())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def degree(self) -> int:
        return max(self._c) if self._c else -math.inf

    def low_degree(self) -> int:
        return min(self._c) if self._c else math.inf

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, ParamPoly()) + v
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return LaurentPoly({k: v * other for k, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for ka, va in self._c.items():
            for kb, vb in other._c.items():
                out[ka + kb] = out.get(ka + kb, ParamPoly()) + va * vb
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({k - 1: v * k for k, v in self._c.items() if k})

    def substitute(self, point) -> "LaurentPoly":
        return LaurentPoly({k: v.substitute(point) for k, v in self._c.items()})

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(sorted({p for v in self._c.values() for p in v.params}))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items(), reverse=True):
            neg = len(v.terms) == 1 and next(iter(v.terms.values())) < 0
            mag = -v if neg else v
            tpow = "" if k == 0 else "t" if k == 1 else f"t^{k}"
            if not tpow:
                body = _wrap(mag)
            elif mag == 1:
                body = tpow
            else:
                body = f"{_wrap(mag)}*{tpow}"
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _half(e) -> int:
    """Exponent on the half grid -> integer count of half units."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError(f"exponent {e} is not on the half-integer grid")
    return int(e2)


def _min_order(*orders):
    finite = [o for o in orders if o is not None and o != math.inf]
    return min(finite) if finite else None


class HalfGridSeries:
    """Truncated series ``sum c_e z^e`` with ``e`` in ``(1/2)Z``.

    Exponents are stored internally in half units.  ``order`` is the exponent
    bound below which every coefficient is known; ``None`` marks an exact
    (finite) polynomial.  Equality only compares coefficients below the
    smaller of the two orders, so two truncations of the same series are
    equal.
    """

    __slots__ = ("_c", "_order")

    def __init__(self, halfcoeffs: Mapping[int, object] | None = None, half_order: int | None = None):
        out = {}
        for h, v in (halfcoeffs or {}).items():
            if half_order is not None and h >= half_order:
                continue
            v = ParamPoly.coerce(v)
            if v:
                out[int(h)] = v
        self._c = out
        self._order = half_order

    # construction -------------------------------------------------------
    @classmethod
    def from_terms(cls, coeffs: Mapping[object, object], order=None) -> "HalfGridSeries":
        """Build from ``{exponent: coefficient}`` with real (half-integer) exponents."""
        return cls({_half(e): v for e, v in coeffs.items()}, None if order is None else _half(order))

    @classmethod
    def monomial(cls, e, c=1, order=None) -> "HalfGridSeries":
        return cls.from_terms({e: c}, order)

    @classmethod
    def one(cls, order=None) -> "HalfGridSeries":
        return cls.from_terms({0: 1}, order)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, order=None) -> "HalfGridSeries":
        return cls.from_terms(p.coeffs, order)

    # inspection ---------------------------------------------------------
    @property
    def order(self):
        """Truncation order as an exponent (``int``/``Fraction``), ``None`` if exact."""
        if self._order is None:
            return None
        o = Fraction(self._order, 2)
        return int(o) if o.denominator == 1 else o

    @property
    def half_order(self):
        return self._order

    def is_exact(self) -> bool:
        return self._order is None

    def coeff(self, e) -> ParamPoly:
        h = _half(e)
        if self._order is not None and h >= self._order:
            raise ValueError(f"coefficient of z^{e} lies beyond truncation order {self.order}")
        return self._c.get(h, ParamPoly())

    def items(self):
        """``(exponent, coefficient)`` pairs in increasing exponent order."""
        for h, v in sorted(self._c.items()):
            e = Fraction(h, 2)
            yield (int(e) if e.denominator == 1 else e), v

    def half_items(self):
        return sorted(self._c.items())

    def valuation(self):
        """Lowest stored exponent in half units (order if no terms, inf if exact zero)."""
        if self._c:
            return min(self._c)
        return math.inf if self._order is None else self._order

    def is_zero(self) -> bool:
        return not self._c

    def truncate(self, order) -> "HalfGridSeries":
        h = _half(order)
        if self._order is not None and h > self._order:
            raise ValueError(f"cannot extend series of order {self.order} to {order}")
        return HalfGridSeries(self._c, h)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = HalfGridSeries({0: other})
        if not isinstance(other, HalfGridSeries):
            return NotImplemented
        order = _min_order(self._order, other._order)
        out = dict(self._c)
        for h, v in other._c.items():
            out[h] = out.get(h, ParamPoly()) + v
        return HalfGridSeries(out, order)

    __radd__ = __add__

    def __neg__(self):
        return HalfGridSeries({h: -v for h, v in self._c.items()}, self._order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = HalfGridSeries({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return HalfGridSeries({h: v * other for h, v in self._c.items()}, self._order)
        if not isinstance(other, HalfGridSeries):
            return NotImplemented
        va, vb = self.valuation(), other.valuation()
        oa = math.inf if self._order is None else self._order
        ob = math.inf if other._order is None else other._order
        order = min(oa + vb, ob + va)
        order = None if order == math.inf else int(order)
        out: dict = {}
        right = sorted(other._c.items())
        for ha, ca in self._c.items():
            for hb, cb in right:
                h = ha + hb
                if order is not None and h >= order:
                    break
                out[h] = out.get(h, ParamPoly()) + ca * cb
        return HalfGridSeries(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def shift(self, e) -> "HalfGridSeries":
        """Multiply by ``z^e``."""
        h = _half(e)
        return HalfGridSeries(
            {k + h: v for k, v in self._c.items()},
            None if self._order is None else self._order + h,
        )

    def map_coefficients(self, fn) -> "HalfGridSeries":
        return HalfGridSeries({h: fn(v) for h, v in self._c.items()}, self._order)

    def differentiate(self) -> "HalfGridSeries":
        return HalfGridSeries(
            {h - 2: v * Fraction(h, 2) for h, v in self._c.items() if h},
            None if self._order is None else self._order - 2,
        )

    def integrate(self, constant=0) -> "HalfGridSeries":
        """Term-by-term antiderivative; a nonzero ``z^-1`` term is an error."""
        if -2 in self._c:
            raise ValueError("series has a z^-1 term; its integral is not a power series")
        out = {h + 2: v * Fraction(2, h + 2) for h, v in self._c.items()}
        if constant:
            out[0] = out.get(0, ParamPoly()) + ParamPoly.coerce(constant)
        return HalfGridSeries(out, None if self._order is None else self._order + 2)

    def inverse_sqrt(self, order=None) -> "HalfGridSeries":
        """``self^(-1/2)`` by the Newton step ``r <- r (3 - a r^2) / 2``."""
        target = self._target(order)
        r = HalfGridSeries.one()
        prec = 1
        while True:
            prec = min(2 * prec, target)
            a = HalfGridSeries(self._c, prec)
            r = HalfGridSeries(r._c, prec)
            r = (r * (3 - a * r * r)) * Fraction(1, 2)
            r = HalfGridSeries(r._c, prec)
            if prec == target:
                return r

    def sqrt(self, order=None) -> "HalfGridSeries":
        target = self._target(order)
        r = self.inverse_sqrt(Fraction(target, 2))
        return HalfGridSeries((HalfGridSeries(self._c, target) * r)._c, target)

    def _target(self, order) -> int:
        if self._c.get(0) != ParamPoly.const(1) or min(self._c) < 0:
            raise ValueError("square root needs a series with constant term 1 and no negative powers")
        if order is None:
            if self._order is None:
                raise ValueError("an exact polynomial needs an explicit truncation order")
            return self._order
        target = _half(order)
        if self._order is not None:
            target = min(target, self._order)
        return target

    def substitute(self, point) -> "HalfGridSeries":
        return self.map_coefficients(lambda v: v.substitute(point))

    # comparison and output ---------------------------------------------
    def difference_terms(self, other: "HalfGridSeries") -> list:
        """Exponents below the common order where the two series disagree."""
        order = _min_order(self._order, other._order)
        keys = set(self._c) | set(other._c)
        bad = []
        for h in sorted(keys):
            if order is not None and h >= order:
                continue
            if self._c.get(h, ParamPoly()) != other._c.get(h, ParamPoly()):
                e = Fraction(h, 2)
                bad.append(int(e) if e.denominator == 1 else e)
        return bad

    def __eq__(self, other):
        if not isinstance(other, HalfGridSeries):
            return NotImplemented
        return not self.difference_terms(other)

    __hash__ = None

    def to_json(self) -> list[dict]:
        return [{"exponent": format_rational(e), "coefficient": str(v)} for e, v in self.items()]

    def __str__(self):
        parts = []
        for e, v in self.items():
            zpow = "" if e == 0 else "z" if e == 1 else f"z^{format_rational(e) if isinstance(e, int) else '(' + format_rational(e) + ')'}"
            if not zpow:
                parts.append(_wrap(v))
            elif v == 1:
                parts.append(zpow)
            else:
                parts.append(f"{_wrap(v)}*{zpow}")
        body = " + ".join(parts) if parts else "0"
        if self._order is not None:
            body += f" + O(z^{format_rational(Fraction(self._order, 2))})"
        return body

    def __repr__(self):
        return f"HalfGridSeries({self})"


def series_arith(a: HalfGridSeries, b: HalfGridSeries, op: str) -> HalfGridSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def series_sqrt_newton(a: HalfGridSeries, order=None) -> HalfGridSeries:
    return a.sqrt(order)


def series_integrate(a: HalfGridSeries, constant=0) -> HalfGridSeries:
    return a.integrate(constant)


def series_differentiate(a: HalfGridSeries) -> HalfGridSeries:
    return a.differentiate()


def sum_series(items: Iterable[HalfGridSeries]) -> HalfGridSeries:
    total = HalfGridSeries()
    for s in items:
        total = total + s
    return total
