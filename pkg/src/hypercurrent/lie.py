"""Finite-dimensional simple Lie algebras given by rational structure constants."""

from __future__ import annotations

import csv
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Mapping, Sequence

from .linalg import rank

__all__ = ["LieAlgebraError", "SimpleLieAlgebra", "sl2", "sl", "from_structure_csv", "algebra_from_selector", "killing_form"]


class LieAlgebraError(ValueError):
    pass


class SimpleLieAlgebra:
    """Basis labels, sparse structure constants ``[x_a, x_b] = sum_c C[a,b][c] x_c``
    and an invariant form (the Killing form unless one is supplied)."""

    def __init__(self, labels: Sequence[str], brackets: Mapping, form: Mapping | None = None, name: str = ""):
        self.labels = tuple(str(l) for l in labels)
        if len(set(self.labels)) != len(self.labels):
            raise LieAlgebraError("duplicate basis labels")
        self.name = name or f"<{len(self.labels)}-dim>"
        self._br: dict[tuple[str, str], dict[str, Fraction]] = {}
        for (a, b), out in brackets.items():
            row = {str(c): Fraction(v) for c, v in out.items() if v}
            for key in (a, b, *row):
                if key not in self.labels:
                    raise LieAlgebraError(f"unknown basis label {key!r}")
            if row:
                self._br[(str(a), str(b))] = row
        self._validate_brackets()
        self._form = self._killing_matrix() if form is None else {
            (a, b): Fraction(v) for (a, b), v in form.items() if v
        }
        self._validate_form()

    def __repr__(self):
        return f"SimpleLieAlgebra({self.name})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket_basis(self, a: str, b: str) -> dict[str, Fraction]:
        return self._br.get((a, b), {})

    def form(self, a: str, b: str) -> Fraction:
        return self._form.get((a, b), Fraction(0))

    def bracket(self, x: Mapping[str, object], y: Mapping[str, object]) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.bracket_basis(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {c: v for c, v in out.items() if v}

    def killing(self, x: Mapping[str, object], y: Mapping[str, object]):
        total = 0
        for a, ca in x.items():
            for b, cb in y.items():
                f = self.form(a, b)
                if f:
                    total = total + ca * cb * f
        return total

    def _killing_matrix(self) -> dict:
        # (a, b) = tr(ad a ad b) = sum_c [a, [b, c]]_c
        out = {}
        for a, b in product(self.labels, repeat=2):
            tr = Fraction(0)
            for c in self.labels:
                for d, v in self.bracket_basis(b, c).items():
                    tr += v * self.bracket_basis(a, d).get(c, 0)
            if tr:
                out[(a, b)] = tr
        return out

    def _validate_brackets(self):
        L = self.labels
        for a, b in product(L, repeat=2):
            ab, ba = self.bracket_basis(a, b), self.bracket_basis(b, a)
            if any(ab.get(c, 0) != -ba.get(c, 0) for c in set(ab) | set(ba)):
                raise LieAlgebraError(f"structure constants not antisymmetric at [{a}, {b}]")
        for a, b, c in product(L, repeat=3):
            total: dict = {}
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                for d, v in self.bracket({y: 1}, {z: 1}).items():
                    for e, w in self.bracket_basis(x, d).items():
                        total[e] = total.get(e, 0) + v * w
            if any(total.values()):
                raise LieAlgebraError(f"Jacobi identity fails on ({a}, {b}, {c})")

    def _validate_form(self):
        L = self.labels
        for a, b in product(L, repeat=2):
            if self.form(a, b) != self.form(b, a):
                raise LieAlgebraError(f"form not symmetric at ({a}, {b})")
        for a, b, c in product(L, repeat=3):
            lhs = self.killing(self.bracket({a: 1}, {b: 1}), {c: 1})
            rhs = self.killing({a: 1}, self.bracket({b: 1}, {c: 1}))
            if lhs != rhs:
                raise LieAlgebraError(f"form not invariant on ({a}, {b}, {c})")
        rows = [{b: self.form(a, b) for b in L} for a in L]
        if rank(rows) != len(L):
            raise LieAlgebraError("form is degenerate; the algebra is not semisimple")


def killing_form(x, y, alg: SimpleLieAlgebra):
    """``(x, y)`` for basis labels or ``{label: coefficient}`` maps."""
    x = {x: 1} if isinstance(x, str) else x
    y = {y: 1} if isinstance(y, str) else y
    return alg.killing(x, y)


def sl2() -> SimpleLieAlgebra:
    """``sl_2`` with basis ``e, h, f``."""
    br = {
        ("e", "f"): {"h": 1},
        ("f", "e"): {"h": -1},
        ("h", "e"): {"e": 2},
        ("e", "h"): {"e": -2},
        ("h", "f"): {"f": -2},
        ("f", "h"): {"f": 2},
    }
    return SimpleLieAlgebra(["e", "h", "f"], br, name="sl2")


def sl(m: int) -> SimpleLieAlgebra:
    """``sl_m`` with basis ``E{i}{j}`` (i != j) and ``H{i} = E_ii - E_{i+1,i+1}``."""
    if m < 2:
        raise LieAlgebraError("sl_m needs m >= 2")
    sep = "_" if m > 9 else ""
    off = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if i != j]
    labels = [f"E{i}{sep}{j}" for i, j in off] + [f"H{i}" for i in range(1, m)]

    def matrix(label):
        M = {}
        if label.startswith("E"):
            i, j = off[labels.index(label)]
            M[(i, j)] = 1
        else:
            i = int(label[1:])
            M[(i, i)] = 1
            M[(i + 1, i + 1)] = -1
        return M

    def mul(A, B):
        out = {}
        for (i, k), a in A.items():
            for (k2, j), b in B.items():
                if k == k2:
                    out[(i, j)] = out.get((i, j), 0) + a * b
        return out

    def decompose(M):
        out = {}
        running = 0
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                v = M.get((i, j), 0)
                if i != j and v:
                    out[f"E{i}{sep}{j}"] = v
        for i in range(1, m):
            running += M.get((i, i), 0)
            if running:
                out[f"H{i}"] = running
        return out

    mats = {l: matrix(l) for l in labels}
    br = {}
    for a, b in product(labels, repeat=2):
        AB, BA = mul(mats[a], mats[b]), mul(mats[b], mats[a])
        C = {k: AB.get(k, 0) - BA.get(k, 0) for k in set(AB) | set(BA)}
        res = decompose({k: v for k, v in C.items() if v})
        if res:
            br[(a, b)] = res
    return SimpleLieAlgebra(labels, br, name=f"sl{m}")


def from_structure_csv(path) -> SimpleLieAlgebra:
    """Read rows ``a, b, c, value`` meaning ``[x_a, x_b]`` has ``value`` on ``x_c``.

    Rows for ``[x_b, x_a]`` are implied by antisymmetry when absent.
    """
    br: dict = {}
    labels: list[str] = []
    with open(Path(path), newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 4:
                raise LieAlgebraError(f"{path}:{lineno}: expected 4 columns, got {len(row)}")
            a, b, c, v = (s.strip() for s in row)
            try:
                value = Fraction(v)
            except ValueError as exc:
                raise LieAlgebraError(f"{path}:{lineno}: bad rational {v!r}") from exc
            for l in (a, b, c):
                if l not in labels:
                    labels.append(l)
            br.setdefault((a, b), {})
            br[(a, b)][c] = br[(a, b)].get(c, 0) + value
    for (a, b), out in list(br.items()):
        if (b, a) not in br:
            br[(b, a)] = {c: -v for c, v in out.items()}
    return SimpleLieAlgebra(labels, br, name=Path(path).stem)


def algebra_from_selector(text: str) -> SimpleLieAlgebra:
    """``sl2``, ``slN:k`` (for ``sl_k``) or ``file:path``."""
    if text == "sl2":
        return sl2()
    if text.startswith("slN:"):
        try:
            k = int(text[4:])
        except ValueError as exc:
            raise LieAlgebraError(f"bad algebra selector {text!r}") from exc
        return sl(k)
    if text.startswith("file:"):
        return from_structure_csv(text[5:])
    raise LieAlgebraError(f"unknown algebra selector {text!r} (use sl2, slN:k or file:path)")
