"""Elements of free modules ``S^r`` over a polynomial ring."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..exact import monomials as mon
from ..exact.monomials import MonomialOrder
from ..exact.polynomial import PolyRing, Polynomial, format_poly


class VectorPoly:
    """An immutable vector of polynomials, stored as ``{(component, monomial): coeff}``."""

    __slots__ = ("ring", "rank", "_terms", "_hash")

    def __init__(self, ring: PolyRing, rank: int, terms: dict):
        self.ring = ring
        self.rank = rank
        self._terms = terms
        self._hash = None

    @classmethod
    def from_polys(cls, polys: Sequence[Polynomial]) -> "VectorPoly":
        if not polys:
            raise ValueError("need at least one entry to infer the ring")
        ring = polys[0].ring
        terms = {}
        for i, p in enumerate(polys):
            for m, c in p.items():
                terms[(i, m)] = c
        return cls(ring, len(polys), terms)

    @classmethod
    def unit(cls, ring: PolyRing, rank: int, i: int, f: Polynomial | None = None) -> "VectorPoly":
        f = ring.one if f is None else f
        return cls(ring, rank, {(i, m): c for m, c in f.items()})

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> "VectorPoly":
        return cls(ring, rank, {})

    # -- access -----------------------------------------------------------
    @property
    def terms_dict(self) -> dict:
        return self._terms

    def items(self):
        return self._terms.items()

    def terms(self, order: MonomialOrder) -> list:
        key = order.keyfn
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def component(self, i: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for (j, m), c in self._terms.items() if j == i})

    def components(self) -> list[Polynomial]:
        parts: list[dict] = [dict() for _ in range(self.rank)]
        for (j, m), c in self._terms.items():
            parts[j][m] = c
        return [Polynomial(self.ring, p) for p in parts]

    def support(self) -> set[int]:
        return {j for j, _ in self._terms}

    def lead(self, order: MonomialOrder):
        if not self._terms:
            raise ValueError("zero vector has no leading term")
        t = max(self._terms, key=order.keyfn)
        return t, self._terms[t]

    def degrees(self, shifts: Sequence[int]) -> set[int]:
        return {sum(m) + (shifts[j] if shifts else 0) for j, m in self._terms}

    def degree(self, shifts: Sequence[int]) -> int:
        ds = self.degrees(shifts)
        if len(ds) > 1:
            raise ValueError("vector is not homogeneous")
        if not ds:
            raise ValueError("zero vector has no degree")
        return ds.pop()

    def is_homogeneous(self, shifts: Sequence[int]) -> bool:
        return len(self.degrees(shifts)) <= 1

    def homogeneous_components(self, shifts: Sequence[int]) -> dict[int, "VectorPoly"]:
        out: dict[int, dict] = {}
        for (j, m), c in self._terms.items():
            out.setdefault(sum(m) + (shifts[j] if shifts else 0), {})[(j, m)] = c
        return {d: VectorPoly(self.ring, self.rank, t) for d, t in sorted(out.items())}

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "VectorPoly"):
        if other.rank != self.rank or other.ring.nvars != self.ring.nvars:
            raise ValueError("vectors live in different free modules")

    def __add__(self, other: "VectorPoly") -> "VectorPoly":
        self._check(other)
        return VectorPoly(self.ring, self.rank, add_terms(self._terms, other._terms, self.ring.field))

    def __neg__(self) -> "VectorPoly":
        red = self.ring.field.reduce
        return VectorPoly(self.ring, self.rank, {t: red(-c) for t, c in self._terms.items()})

    def __sub__(self, other: "VectorPoly") -> "VectorPoly":
        return self + (-other)

    def scale(self, c) -> "VectorPoly":
        f = self.ring.field
        c = f(c)
        if not c:
            return VectorPoly(self.ring, self.rank, {})
        return VectorPoly(self.ring, self.rank, {t: f.reduce(v * c) for t, v in self._terms.items()})

    def __mul__(self, other) -> "VectorPoly":
        if isinstance(other, Polynomial):
            return VectorPoly(self.ring, self.rank, poly_times_terms(other, self._terms, self.ring.field))
        return self.scale(other)

    __rmul__ = __mul__

    def mul_monomial(self, u, c=1) -> "VectorPoly":
        f = self.ring.field
        c = f(c)
        return VectorPoly(self.ring, self.rank,
                          {(j, mon.mul(m, u)): f.reduce(v * c) for (j, m), v in self._terms.items()} if c else {})

    def __eq__(self, other):
        if not isinstance(other, VectorPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        f = self.ring.field
        comps = self.components()
        if self.rank == 1:
            return str(comps[0])
        return "[" + ", ".join(format_poly(p.terms(), self.ring.names, f) for p in comps) + "]"

    def __repr__(self):
        return f"VectorPoly({self})"


def add_terms(a: dict, b: dict, field, scale=1) -> dict:
    red = field.reduce
    out = dict(a)
    for t, c in b.items():
        v = red(out.get(t, 0) + scale * c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def poly_times_terms(p: Polynomial, terms: dict, field) -> dict:
    red = field.reduce
    out: dict = {}
    for u, a in p.items():
        for (j, m), c in terms.items():
            t = (j, tuple([x + y for x, y in zip(m, u)]))
            out[t] = out.get(t, 0) + a * c
    return {t: v for t, v in ((t, red(c)) for t, c in out.items()) if v}


def combine(vectors: Iterable[VectorPoly], coeffs: Iterable[Polynomial], ring: PolyRing, rank: int) -> VectorPoly:
    """``sum(c_i * v_i)``."""
    acc: dict = {}
    field = ring.field
    for v, c in zip(vectors, coeffs):
        if c and v:
            acc = add_terms(acc, poly_times_terms(c, v.terms_dict, field), field)
    return VectorPoly(ring, rank, acc)
