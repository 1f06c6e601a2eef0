"""Sparse exact linear algebra over a field.

Vectors are dicts ``{column key: coefficient}``.  An :class:`Echelon` keeps
its rows in reduced row echelon form, so reducing a vector takes one pass
over the pivots it touches.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from ..exact.scalars import Field


class Echelon:
    def __init__(self, field: Field, pivot_key: Callable | None = None):
        self.field = field
        self.rows: dict[Hashable, dict] = {}
        self._pivot_key = pivot_key

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        red = self.field.reduce
        v = dict(v)
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if not c:
                continue
            for k, a in self.rows[p].items():
                w = red(v.get(k, 0) - c * a)
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
        return v

    def _choose_pivot(self, v: dict):
        return max(v, key=self._pivot_key) if self._pivot_key else max(v)

    def add(self, v: dict) -> bool:
        """Insert ``v``; return True if it was independent of the current rows."""
        r = self.reduce(v)
        if not r:
            return False
        f = self.field
        p = self._choose_pivot(r)
        inv = f.inv(r[p])
        r = {k: f.reduce(a * inv) for k, a in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, a in r.items():
                    w = f.reduce(row.get(k, 0) - c * a)
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
        self.rows[p] = r
        return True

    def extend(self, vs: Iterable[dict]) -> "Echelon":
        for v in vs:
            self.add(v)
        return self

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def contains_all(self, other: "Echelon") -> bool:
        return all(self.contains(r) for r in other.rows.values())

    def __eq__(self, other):
        if not isinstance(other, Echelon):
            return NotImplemented
        return self.rank == other.rank and self.contains_all(other)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def span(field: Field, vectors: Iterable[dict]) -> Echelon:
    return Echelon(field).extend(vectors)


def rank(field: Field, vectors: Iterable[dict]) -> int:
    return span(field, vectors).rank


def independent_subset(field: Field, vectors: Iterable[dict]) -> list[int]:
    """Indices of a greedy maximal independent subset, in input order."""
    ech = Echelon(field)
    return [i for i, v in enumerate(vectors) if ech.add(v)]


def kernel(field: Field, images: list[dict]) -> list[dict[int, object]]:
    """Basis of ``{c : sum c_i images[i] = 0}`` as sparse coefficient dicts."""
    ech = Echelon(field, pivot_key=lambda k: (k[0] == "v", k[1]))
    for i, w in enumerate(images):
        v = {("v", k): a for k, a in w.items()}
        v[("t", i)] = field.one
        ech.add(v)
    out = []
    for p, row in ech.rows.items():
        if p[0] == "t":
            out.append({k[1]: a for k, a in row.items()})
    out.sort(key=lambda c: sorted(c))
    return out


def coordinates(field: Field, basis: list[dict], v: dict) -> list | None:
    """Coefficients expressing ``v`` in the independent list ``basis``; None if outside the span."""
    images = list(basis) + [v]
    for c in kernel(field, images):
        last = c.get(len(basis))
        if last:
            inv = field.inv(last)
            return [field.reduce(-c.get(i, 0) * inv) for i in range(len(basis))]
    if not v:
        return [field.zero] * len(basis)
    return None
