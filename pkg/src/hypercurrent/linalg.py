"""Sparse Gaussian elimination over the rationals.

Rows are ``{column: Fraction}`` dicts.  :class:`SparseEchelon` keeps a reduced
row echelon form incrementally; the pivot of a new row is the first of its
columns under a caller-supplied priority key, so columns that should stay
free (a quotient basis, say) can be pushed to the back.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

Row = dict


class SparseEchelon:
    def __init__(self, priority: Callable[[Hashable], object] | None = None):
        self._priority = priority or (lambda c: c)
        self.pivots: dict[Hashable, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[Hashable, Fraction]) -> Row:
        """Remainder of ``row`` modulo the span of the stored rows."""
        out = {c: Fraction(v) for c, v in row.items() if v}
        for col in [c for c in out if c in self.pivots]:
            v = out.get(col)
            if not v:
                continue
            for c, w in self.pivots[col].items():
                nv = out.get(c, 0) - v * w
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
        return out

    def add(self, row: Mapping[Hashable, Fraction]) -> bool:
        """Insert a row; returns False when it was already in the span."""
        r = self.reduce(row)
        if not r:
            return False
        col = min(r, key=self._priority)
        inv = 1 / r[col]
        r = {c: v * inv for c, v in r.items()}
        for other in self.pivots.values():
            v = other.get(col)
            if v:
                for c, w in r.items():
                    nv = other.get(c, 0) - v * w
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        self.pivots[col] = r
        return True


def rank(rows: Iterable[Mapping[Hashable, Fraction]]) -> int:
    ech = SparseEchelon(priority=repr)
    for r in rows:
        ech.add(r)
    return ech.rank
