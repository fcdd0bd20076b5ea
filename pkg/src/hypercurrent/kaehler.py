"""Reduction of 1-forms to the basis of ``Omega^1_R / dR``.

The basis is ``omega_0 = t^-1 dt`` and ``omega_k = t^-k u dt`` for
``1 <= k <= n``.  Two independent routes are provided:

* closed-form monomial reducers driven by the P/Q coefficient tables, and
* :class:`KaehlerOracle`, which instantiates the parameters at rationals and
  quotients a finite window of forms by the exact forms ``d(t^m)``,
  ``d(t^m u)`` using sparse exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .curve import CurveSpec, RingElement, curve_validate, parse_ring_element, ring_derivative_pairing
from .exact import LaurentPoly, ParamPoly
from .linalg import SparseEchelon
from .parsing import ParseError
from .series import CoefficientTables

__all__ = [
    "CentralVector",
    "OneForm",
    "ReductionWindow",
    "WindowError",
    "KaehlerOracle",
    "parse_one_form",
    "psi",
    "reduce_even_even",
    "reduce_odd_odd",
    "reduce_odd_even",
    "reduce_even_odd",
    "rewrite_step",
    "cocycle",
    "reduce_form",
    "oracle_reduce",
    "oracle_quotient_dimension",
    "default_window",
]


class CentralVector:
    """Coordinates on ``omega_0, ..., omega_n`` with ``ParamPoly`` entries."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(ParamPoly.coerce(c) for c in coords)

    @classmethod
    def zero(cls, n: int) -> "CentralVector":
        return cls([ParamPoly()] * (n + 1))

    @classmethod
    def basis(cls, n: int, k: int, c=1) -> "CentralVector":
        coords = [ParamPoly()] * (n + 1)
        coords[k] = ParamPoly.coerce(c)
        return cls(coords)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __getitem__(self, k) -> ParamPoly:
        return self.coords[k]

    def __len__(self):
        return len(self.coords)

    def _check(self, other):
        if not isinstance(other, CentralVector):
            raise TypeError("expected CentralVector")
        if len(other) != len(self):
            raise ValueError(f"central vectors of different lengths {len(self)} and {len(other)}")

    def __add__(self, other):
        self._check(other)
        return CentralVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return CentralVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return CentralVector(-a for a in self.coords)

    def __mul__(self, c):
        return CentralVector(a * c for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, CentralVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def substitute(self, point) -> "CentralVector":
        return CentralVector(c.substitute(point) for c in self.coords)

    def evaluate(self, point) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.coords)

    def to_json(self) -> dict:
        return {"omega0": str(self.coords[0]), "omega": [str(c) for c in self.coords[1:]]}

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coords):
            if c.is_zero():
                continue
            name = f"ω{k}"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            elif len(c.terms) == 1:
                parts.append(f"{c}*{name}")
            else:
                parts.append(f"({c})*{name}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"CentralVector({self})"


# closed-form reducers ------------------------------------------------------


def psi(i: int, j: int, spec: CurveSpec, tables: CoefficientTables) -> CentralVector:
    """Class of ``t^(i+j-1) u dt``: P-branch if ``i+j >= -n+1``, else Q-branch."""
    n = spec.n
    r = i + j - 1
    if i + j >= -n + 1:
        coords = [tables.p(r, -k) for k in range(1, n + 1)]
    else:
        coords = [tables.q(-r, -k) for k in range(1, n + 1)]
    return CentralVector([ParamPoly()] + coords)


def reduce_even_even(i: int, j: int, spec: CurveSpec) -> CentralVector:
    """``t^i d(t^j) = j delta_{i+j,0} omega_0``."""
    return CentralVector.basis(spec.n, 0, j if i + j == 0 else 0)


def reduce_odd_odd(i: int, j: int, spec: CurveSpec) -> CentralVector:
    """``t^i u d(t^j u) = sum_k (j + k/2) a_k delta_{i+j,-k} omega_0``."""
    k = -(i + j)
    if not 0 <= k <= spec.n:
        return CentralVector.zero(spec.n)
    return CentralVector.basis(spec.n, 0, spec.a(k) * (Fraction(j) + Fraction(k, 2)))


def reduce_odd_even(i: int, j: int, spec: CurveSpec, tables: CoefficientTables) -> CentralVector:
    """``t^i u d(t^j) = j psi_ij``."""
    if j == 0:
        return CentralVector.zero(spec.n)
    return psi(i, j, spec, tables) * j


def reduce_even_odd(i: int, j: int, spec: CurveSpec, tables: CoefficientTables) -> CentralVector:
    """``t^i d(t^j u) = d(t^(i+j) u) - t^j u d(t^i)``, hence ``-reduce_odd_even(j, i)``."""
    return -reduce_odd_even(j, i, spec, tables)


def rewrite_step(m: int, spec: CurveSpec, i: int) -> dict[int, ParamPoly]:
    """Rewrite ``t^(n+i-1) u dt`` (with ``u^m = p``) through lower ``u dt`` monomials.

    Returns ``{exponent: coefficient}`` with exponents ``i+j-1``, ``0 <= j < n``;
    the coefficients are ``-((m+1)j + mi) a_j / ((m+1)n + im)``.
    """
    if m < 2:
        raise ValueError("rewrite needs m >= 2")
    n = spec.n
    lead = (m + 1) * n + i * m
    if lead == 0:
        raise ZeroDivisionError(f"leading scalar (m+1)n+im vanishes for m={m}, n={n}, i={i}")
    out = {}
    for j in range(n):
        w = (m + 1) * j + m * i
        if w and spec.a(j):
            out[i + j - 1] = spec.a(j) * Fraction(-w, lead)
    return out


def cocycle(f: RingElement, g: RingElement, spec: CurveSpec, tables: CoefficientTables) -> CentralVector:
    """Class of ``f dg`` in ``Omega^1_R / dR``."""
    total = CentralVector.zero(spec.n)
    for w, i, f_odd, j, g_odd in ring_derivative_pairing(f, g, spec):
        if not f_odd and not g_odd:
            v = reduce_even_even(i, j, spec)
        elif f_odd and g_odd:
            v = reduce_odd_odd(i, j, spec)
        elif f_odd:
            v = reduce_odd_even(i, j, spec, tables)
        else:
            v = reduce_even_odd(i, j, spec, tables)
        if not v.is_zero():
            total = total + v * w
    return total


# 1-forms ---------------------------------------------------------------------


@dataclass(frozen=True)
class OneForm:
    """``a(t) dt + b(t) u dt + c(t) du``."""

    dt: LaurentPoly = field(default_factory=LaurentPoly)
    udt: LaurentPoly = field(default_factory=LaurentPoly)
    du: LaurentPoly = field(default_factory=LaurentPoly)

    @classmethod
    def monomial(cls, kind: str, k: int, c=1) -> "OneForm":
        if kind not in ("dt", "udt", "du"):
            raise ValueError(f"unknown form kind {kind!r}")
        return cls(**{kind: LaurentPoly.monomial(k, c)})


def parse_one_form(text: str, spec: CurveSpec | None = None) -> OneForm:
    """Parse ``"t^3*u dt"``, ``"t^-1 dt"`` or ``"t^2 du"``."""
    s = text.strip()
    if s.endswith("dt"):
        kind = "dt"
    elif s.endswith("du"):
        kind = "du"
    else:
        raise ParseError("a 1-form must end in 'dt' or 'du'", text, len(text))
    prefix = s[:-2].rstrip().rstrip("*").rstrip() or "1"
    f = parse_ring_element(prefix, spec)
    if kind == "dt":
        return OneForm(dt=f.even, udt=f.odd)
    if f.odd:
        # u du = p'(t)/2 dt
        if spec is None:
            raise ParseError(f"u du needs a curve to rewrite: {text!r}")
        return OneForm(dt=f.odd * spec.p_prime * Fraction(1, 2), du=f.even)
    return OneForm(du=f.even)


def reduce_form(form: OneForm, spec: CurveSpec, tables: CoefficientTables) -> CentralVector:
    """Closed-form reduction of a 1-form (``t^e dt = t^e d(t)`` and so on)."""
    total = CentralVector.zero(spec.n)
    for e, c in form.dt.items():
        total = total + reduce_even_even(e, 1, spec) * c
    for e, c in form.udt.items():
        total = total + reduce_odd_even(e, 1, spec, tables) * c
    for e, c in form.du.items():
        total = total + reduce_even_odd(e, 0, spec, tables) * c
    return total


# brute-force oracle ---------------------------------------------------------


class WindowError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionWindow:
    """Exponent window ``[-N, N]`` plus a rational instantiation of the parameters."""

    N: int
    point: Mapping[str, Fraction] = field(default_factory=dict)

    def __hash__(self):
        return hash((self.N, tuple(sorted(self.point.items()))))


def default_window(spec: CurveSpec, exponent: int = 0, point=None) -> ReductionWindow:
    n = spec.n
    return ReductionWindow(max(3 * n, abs(exponent) + 2 * n), dict(point or {}))


class KaehlerOracle:
    """Exact quotient of the forms supported in a window by the exact forms there.

    Coordinates are ``('dt', e)``, ``('udt', e)`` for ``-N <= e <= N`` and
    ``('du', s)`` for ``0 <= s < n``; every ``t^m du`` is first rewritten with
    ``p du = (p'/2) u dt`` after dividing ``t^m`` by ``p`` in ``C[t, t^-1]``.
    """

    def __init__(self, spec: CurveSpec, window: ReductionWindow):
        spec = spec.instantiate(window.point) if window.point else spec
        if not spec.is_numeric():
            missing = ", ".join(spec.params)
            raise ValueError(f"oracle needs every parameter instantiated; unbound: {missing}")
        curve_validate(spec)
        n = spec.n
        if window.N < 3 * n:
            raise ValueError(f"window N={window.N} must be at least 3n = {3 * n}")
        self.spec = spec
        self.N = window.N
        self._a = [c.constant_value() for c in spec.coeffs]
        self._divmod_cache: dict[int, tuple[dict, dict]] = {0: ({}, {0: Fraction(1)})}
        basis = {("dt", -1)} | {("udt", -k) for k in range(1, n + 1)}
        self._basis = basis
        order = {"du": 0, "udt": 1, "dt": 2}
        self.echelon = SparseEchelon(priority=lambda c: (c in basis, order[c[0]], abs(c[1]), c[1]))
        self._build()

    # t^m = q p + r with deg r < n, in C[t, t^-1]
    def _divmod(self, m: int) -> tuple[dict, dict]:
        cache = self._divmod_cache
        if m in cache:
            return cache[m]
        a, n = self._a, self.spec.n
        step = 1 if m > 0 else -1
        k = max(cache) if m > 0 else min(cache)
        while k != m:
            q, r = cache[k]
            if step > 0:
                tr = {e + 1: c for e, c in r.items()}
                c = tr.pop(n, Fraction(0))
                q2 = {e + 1: v for e, v in q.items()}
                if c:
                    q2[0] = q2.get(0, 0) + c
                    for j in range(n):
                        if a[j]:
                            tr[j] = tr.get(j, 0) - c * a[j]
            else:
                r0 = r.get(0, Fraction(0))
                tr = {e - 1: c for e, c in r.items() if e}
                q2 = {e - 1: v for e, v in q.items()}
                if r0:
                    f = r0 / a[0]
                    q2[-1] = q2.get(-1, 0) + f
                    for j in range(1, n + 1):
                        if a[j]:
                            tr[j - 1] = tr.get(j - 1, 0) - f * a[j]
            k += step
            cache[k] = ({e: v for e, v in q2.items() if v}, {e: v for e, v in tr.items() if v})
        return cache[m]

    def _du_row(self, m: int, scale: Fraction = Fraction(1)) -> dict:
        """Coordinates of ``scale * t^m du``."""
        q, r = self._divmod(m)
        row: dict = {}
        a = self._a
        for e, qc in q.items():
            for j in range(1, len(a)):
                if a[j]:
                    key = ("udt", e + j - 1)
                    row[key] = row.get(key, 0) + scale * qc * j * a[j] / 2
        for s, rc in r.items():
            row[("du", s)] = row.get(("du", s), 0) + scale * rc
        return {k: v for k, v in row.items() if v}

    def _in_window(self, row) -> bool:
        return all(kind == "du" or -self.N <= e <= self.N for kind, e in row)

    def _build(self):
        N, n = self.N, self.spec.n
        for m in range(-N + 1, N + 2):
            if m:
                self.echelon.add({("dt", m - 1): Fraction(m)})
        for m in range(-N - n, N + 2):
            row = self._du_row(m)
            if m:
                row[("udt", m - 1)] = row.get(("udt", m - 1), 0) + m
            row = {k: v for k, v in row.items() if v}
            if row and self._in_window(row):
                self.echelon.add(row)

    @property
    def columns(self) -> int:
        return 2 * (2 * self.N + 1) + self.spec.n

    def quotient_dimension(self) -> int:
        """``dim`` of window forms modulo window exact forms."""
        return self.columns - self.echelon.rank

    def form_row(self, form: OneForm) -> dict:
        row: dict = {}
        for kind, part in (("dt", form.dt), ("udt", form.udt)):
            for e, c in part.items():
                key = (kind, e)
                row[key] = row.get(key, 0) + c.constant_value()
        for e, c in form.du.items():
            for key, v in self._du_row(e, c.constant_value()).items():
                row[key] = row.get(key, 0) + v
        return {k: v for k, v in row.items() if v}

    def reduce(self, form: OneForm) -> CentralVector:
        if form.dt.params or form.udt.params or form.du.params:
            raise ValueError("oracle forms must have rational coefficients")
        row = self.form_row(form)
        if not self._in_window(row):
            raise WindowError(f"form leaves the window [-{self.N}, {self.N}]; use a larger N")
        rem = self.echelon.reduce(row)
        stray = [c for c in rem if c not in self._basis]
        if stray:
            raise WindowError(f"reduction needs exponents outside [-{self.N}, {self.N}] ({stray[0]}); use a larger N")
        n = self.spec.n
        coords = [rem.get(("dt", -1), 0)] + [rem.get(("udt", -k), 0) for k in range(1, n + 1)]
        return CentralVector(coords)


def oracle_reduce(form: OneForm, window: ReductionWindow, spec: CurveSpec) -> CentralVector:
    """Reduce ``form`` by exact elimination; see :class:`KaehlerOracle`."""
    return KaehlerOracle(spec, window).reduce(form)


def oracle_quotient_dimension(window: ReductionWindow, spec: CurveSpec) -> int:
    return KaehlerOracle(spec, window).quotient_dimension()
