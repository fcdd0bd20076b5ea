"""The centrally extended current algebra ``(g ⊗ R) ⊕ Omega^1_R / dR``.

Brackets of basis monomials::

    [x⊗t^i,   y⊗t^j]   = [x,y]⊗t^(i+j)    + (x,y) j delta_{i+j,0} omega_0
    [x⊗t^i u, y⊗t^j u] = [x,y]⊗t^(i+j) p  + (x,y) sum_k (j + k/2) a_k delta_{i+j,-k} omega_0
    [x⊗t^i u, y⊗t^j]   = [x,y]⊗t^(i+j) u  + (x,y) j psi_ij

The form factor ``(x,y)`` in the odd-odd line is required for the Jacobi
identity; ``omit_form_in_odd_odd=True`` drops it to reproduce the failure.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .curve import CurveSpec, RingElement, parse_ring_element
from .exact import ParamPoly
from .kaehler import (
    CentralVector,
    psi,
    reduce_even_even,
    reduce_even_odd,
    reduce_odd_even,
    reduce_odd_odd,
)
from .lie import SimpleLieAlgebra
from .parsing import ParseError
from .series import CoefficientTables

__all__ = [
    "LoopElement",
    "psi",
    "bracket",
    "parse_loop_element",
    "JacobiReport",
    "verify_jacobi",
    "structure_table",
    "table_to_csv",
]


class LoopElement:
    """Sparse element ``sum c x⊗t^k (u) + central``.

    ``even`` and ``odd`` map ``(label, k)`` to ``ParamPoly``; ``odd`` holds the
    coefficients of ``x⊗t^k u``.
    """

    __slots__ = ("spec", "even", "odd", "central")

    def __init__(self, spec: CurveSpec, even=None, odd=None, central: CentralVector | None = None):
        self.spec = spec
        self.even = {k: ParamPoly.coerce(v) for k, v in (even or {}).items() if v}
        self.odd = {k: ParamPoly.coerce(v) for k, v in (odd or {}).items() if v}
        self.central = central if central is not None else CentralVector.zero(spec.n)
        if len(self.central) != spec.n + 1:
            raise ValueError("central vector does not match the curve degree")

    @classmethod
    def monomial(cls, spec: CurveSpec, label: str, k: int, odd: bool = False, c=1) -> "LoopElement":
        part = {(label, k): c}
        return cls(spec, odd=part) if odd else cls(spec, even=part)

    @classmethod
    def from_ring(cls, spec: CurveSpec, label: str, r: RingElement, c=1) -> "LoopElement":
        c = ParamPoly.coerce(c)
        return cls(
            spec,
            even={(label, k): v * c for k, v in r.even.items()},
            odd={(label, k): v * c for k, v in r.odd.items()},
        )

    @classmethod
    def central_element(cls, spec: CurveSpec, vec: CentralVector) -> "LoopElement":
        return cls(spec, central=vec)

    def _same(self, other):
        if not isinstance(other, LoopElement):
            raise TypeError("expected LoopElement")
        if other.spec != self.spec:
            raise ValueError("loop elements over different curves")

    @staticmethod
    def _merge(a: dict, b: dict, sign=1) -> dict:
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, ParamPoly()) + v * sign
        return out

    def __add__(self, other):
        self._same(other)
        return LoopElement(
            self.spec,
            self._merge(self.even, other.even),
            self._merge(self.odd, other.odd),
            self.central + other.central,
        )

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return LoopElement(
            self.spec,
            {k: v * c for k, v in self.even.items()},
            {k: v * c for k, v in self.odd.items()},
            self.central * c,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.even and not self.odd and self.central.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LoopElement):
            return NotImplemented
        return (self.spec, self.even, self.odd, self.central) == (other.spec, other.even, other.odd, other.central)

    __hash__ = None

    def project(self) -> "LoopElement":
        """Drop the central part."""
        return LoopElement(self.spec, self.even, self.odd)

    def parities(self) -> set[int]:
        """Parities present (0 even, 1 odd) in the Z_2 grading."""
        out = set()
        if self.even or not self.central[0].is_zero():
            out.add(0)
        if self.odd or any(not c.is_zero() for c in self.central.coords[1:]):
            out.add(1)
        return out

    def terms(self):
        """``(label, k, odd, coefficient)`` in a deterministic order."""
        for odd, part in ((False, self.even), (True, self.odd)):
            for (label, k), v in sorted(part.items(), key=lambda kv: (kv[0][1], kv[0][0])):
                yield label, k, odd, v

    def to_json(self) -> dict:
        return {
            "terms": [
                {"x": label, "exp": k, "parity": "odd" if odd else "even", "coefficient": str(v)}
                for label, k, odd, v in self.terms()
            ],
            "central": self.central.to_json(),
        }

    def __str__(self):
        parts = []
        for label, k, odd, v in self.terms():
            ring = "1" if k == 0 else "t" if k == 1 else f"t^{k}"
            if odd:
                ring = "u" if k == 0 else f"{ring}*u"
            body = f"{label}⊗{ring}"
            if v == 1:
                parts.append(body)
            elif v == -1:
                parts.append(f"-{body}")
            elif len(v.terms) == 1:
                parts.append(f"{v}*{body}")
            else:
                parts.append(f"({v})*{body}")
        if not self.central.is_zero():
            parts.append(str(self.central))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"LoopElement({self})"


def _central_term(i, odd_a, j, odd_b, spec, tables) -> CentralVector:
    if not odd_a and not odd_b:
        return reduce_even_even(i, j, spec)
    if odd_a and odd_b:
        return reduce_odd_odd(i, j, spec)
    if odd_a:
        return reduce_odd_even(i, j, spec, tables)
    return reduce_even_odd(i, j, spec, tables)


def bracket(
    A: LoopElement,
    B: LoopElement,
    alg: SimpleLieAlgebra,
    spec: CurveSpec,
    tables: CoefficientTables,
    omit_form_in_odd_odd: bool = False,
) -> LoopElement:
    """Bracket in the universal central extension; the center is central."""
    if A.spec != spec or B.spec != spec:
        raise ValueError("bracket operands belong to a different curve")
    if tables.spec != spec:
        raise ValueError("coefficient tables belong to a different curve")
    even: dict = {}
    odd: dict = {}
    central = CentralVector.zero(spec.n)
    p = spec.p
    for x, i, odd_a, ca in A.terms():
        for y, j, odd_b, cb in B.terms():
            c = ca * cb
            xy = alg.bracket_basis(x, y)
            if xy:
                if odd_a and odd_b:
                    for e, pc in p.items():
                        for z, v in xy.items():
                            key = (z, i + j + e)
                            even[key] = even.get(key, ParamPoly()) + c * pc * v
                else:
                    target = odd if (odd_a or odd_b) else even
                    for z, v in xy.items():
                        key = (z, i + j)
                        target[key] = target.get(key, ParamPoly()) + c * v
            form = alg.form(x, y)
            if odd_a and odd_b and omit_form_in_odd_odd:
                form = Fraction(1)
            if form:
                vec = _central_term(i, odd_a, j, odd_b, spec, tables)
                if not vec.is_zero():
                    central = central + vec * (c * form)
    return LoopElement(spec, even, odd, central)


def _split_terms(text: str) -> list[tuple[int, str, int]]:
    """Split at top-level ``+``/``-`` into ``(sign, chunk, offset)``."""
    out = []
    depth = 0
    start = 0
    sign = 1
    prev = ""
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            if not text[start:pos].strip():
                # leading sign of the current term
                sign = -sign if ch == "-" else sign
                start = pos + 1
            elif prev not in ("^", "*", "/", "⊗", "@"):
                out.append((sign, text[start:pos], start))
                sign = -1 if ch == "-" else 1
                start = pos + 1
        if not ch.isspace():
            prev = ch
    out.append((sign, text[start:], start))
    return out


def parse_loop_element(text: str, alg: SimpleLieAlgebra, spec: CurveSpec) -> LoopElement:
    """Parse ``"e⊗t^2*u"``, ``"e@t - 2*h@(t + u)"``; ``@`` is an ASCII ``⊗``."""
    total = LoopElement(spec)
    for sign, chunk, offset in _split_terms(text):
        if not chunk.strip():
            raise ParseError("empty term", text, offset)
        seps = [k for k, ch in enumerate(chunk) if ch in "⊗@"]
        if len(seps) != 1:
            where = offset + (seps[1] if len(seps) > 1 else len(chunk.rstrip()))
            raise ParseError("each term needs exactly one '⊗' (or '@')", text, where)
        left, right = chunk[: seps[0]], chunk[seps[0] + 1 :]
        head, _, label = left.rstrip().rpartition("*")
        label = label.strip()
        if label not in alg.labels:
            pos = offset + left.find(label) if label else offset + seps[0]
            raise ParseError(f"unknown basis element {label!r} of {alg.name}", text, max(pos, 0))
        coef = ParamPoly.const(1)
        if head.strip():
            try:
                coef = ParamPoly.parse(head)
            except ParseError as exc:
                raise ParseError(exc.message, text, offset + exc.pos) from None
        try:
            ring = parse_ring_element(right, spec)
        except ParseError as exc:
            raise ParseError(exc.message, text, offset + seps[0] + 1 + exc.pos) from None
        total = total + LoopElement.from_ring(spec, label, ring, coef * sign)
    return total


@dataclass
class JacobiReport:
    trials: int
    failures: int = 0
    counterexample: dict | None = None
    seed: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        if self.passed:
            return f"jacobi: {self.trials}/{self.trials} triples satisfy the identity (seed {self.seed})"
        ce = self.counterexample or {}
        return (
            f"jacobi: {self.failures}/{self.trials} triples FAIL (seed {self.seed}); first: "
            f"A={ce.get('A')}, B={ce.get('B')}, C={ce.get('C')} -> {ce.get('sum')}"
        )


def _random_element(rng: random.Random, alg, spec, window, central_prob=0.05) -> LoopElement:
    if rng.random() < central_prob:
        k = rng.randrange(spec.n + 1)
        return LoopElement.central_element(spec, CentralVector.basis(spec.n, k, rng.randint(1, 3)))
    odd = rng.random() < 0.5
    part = {}
    for _ in range(rng.randint(1, 2)):
        label = rng.choice(alg.labels)
        k = rng.randint(-window, window)
        part[(label, k)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
    return LoopElement(spec, odd=part) if odd else LoopElement(spec, even=part)


def verify_jacobi(
    trials: int,
    seed: int,
    window: int,
    alg: SimpleLieAlgebra,
    spec: CurveSpec,
    tables: CoefficientTables | None = None,
    omit_form_in_odd_odd: bool = False,
) -> JacobiReport:
    """Check the Jacobi identity on random parity-homogeneous triples."""
    tables = tables or CoefficientTables(spec)
    rng = random.Random(seed)
    report = JacobiReport(trials=trials, seed=seed)

    def br(X, Y):
        return bracket(X, Y, alg, spec, tables, omit_form_in_odd_odd)

    for _ in range(trials):
        A, B, C = (_random_element(rng, alg, spec, window) for _ in range(3))
        total = br(A, br(B, C)) + br(B, br(C, A)) + br(C, br(A, B))
        if not total.is_zero():
            report.failures += 1
            if report.counterexample is None:
                report.counterexample = {"A": str(A), "B": str(B), "C": str(C), "sum": str(total)}
    return report


def structure_table(
    spec: CurveSpec,
    alg: SimpleLieAlgebra,
    exponents: Iterable[int],
    parities: Iterable[str] = ("even", "odd"),
    tables: CoefficientTables | None = None,
) -> list[dict]:
    """Brackets of all pairs of basis monomials ``x⊗t^i`` / ``x⊗t^i u``."""
    tables = tables or CoefficientTables(spec)
    exps = list(exponents)
    pars = [p for p in ("even", "odd") if p in set(parities)]
    monomials = [(x, k, par) for par in pars for k in exps for x in alg.labels]
    rows = []
    for x, i, pa in monomials:
        A = LoopElement.monomial(spec, x, i, pa == "odd")
        for y, j, pb in monomials:
            B = LoopElement.monomial(spec, y, j, pb == "odd")
            res = bracket(A, B, alg, spec, tables)
            rows.append(
                {
                    "left": {"x": x, "exp": i, "parity": pa},
                    "right": {"x": y, "exp": j, "parity": pb},
                    "result": res.to_json(),
                }
            )
    return rows


def table_to_csv(rows: list[dict]) -> str:
    """Flatten :func:`structure_table` output, one CSV row per result term."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    n = len(rows[0]["result"]["central"]["omega"]) if rows else 0
    w.writerow(
        ["left_x", "left_exp", "left_parity", "right_x", "right_exp", "right_parity", "term_x", "term_exp", "term_parity", "coefficient"]
        + [f"omega{k}" for k in range(n + 1)]
    )
    for r in rows:
        L, R, res = r["left"], r["right"], r["result"]
        central = [res["central"]["omega0"], *res["central"]["omega"]]
        terms = res["terms"] or [{"x": "", "exp": "", "parity": "", "coefficient": "0"}]
        for t in terms:
            w.writerow(
                [L["x"], L["exp"], L["parity"], R["x"], R["exp"], R["parity"], t["x"], t["exp"], t["parity"], t["coefficient"]]
                + central
            )
    return buf.getvalue()
