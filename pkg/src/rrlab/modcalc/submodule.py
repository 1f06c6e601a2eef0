"""Finitely generated graded submodules and the operations on them."""

from __future__ import annotations

import logging
from functools import cached_property
from typing import Iterable, Sequence

from ..exact import monomials as mon
from ..exact.polynomial import Polynomial
from ..groebner import GroebnerBasis, VectorPoly, buchberger_terms, tagged_kernel
from .linalg import Echelon
from .ring import Ambient, InhomogeneousError, monomial_ideal_dim

log = logging.getLogger(__name__)


class NotFiniteLengthError(ValueError):
    """Raised by :meth:`FiniteLengthModule.kdim` on a module of positive dimension."""

    def __init__(self, message: str, annihilator=None, dimension: int | None = None):
        super().__init__(message)
        self.annihilator = annihilator
        self.dimension = dimension


class Submodule:
    """The submodule of an :class:`Ambient` ``F/U`` generated by ``gens``.

    Generators are lifts to ``F``; the zero submodule has no generators.
    """

    def __init__(self, ambient: Ambient, gens: Iterable, homogeneous: bool = True):
        self.ambient = ambient
        vecs = []
        for g in gens:
            if not isinstance(g, VectorPoly):
                g = ambient.vector(g) if isinstance(g, (list, tuple)) else ambient.vector([g])
            if g.rank != ambient.rank:
                raise ValueError("generator has the wrong rank")
            if not g:
                continue
            if homogeneous and not g.is_homogeneous(ambient.shifts):
                raise InhomogeneousError(f"generator {g} is not homogeneous")
            vecs.append(g)
        self.gens = tuple(vecs)
        self.homogeneous = homogeneous

    # -- basic data -------------------------------------------------------
    @property
    def ring(self):
        return self.ambient.ring

    @property
    def rank(self) -> int:
        return self.ambient.rank

    @property
    def shifts(self) -> tuple:
        return self.ambient.shifts

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return f"Submodule({', '.join(map(str, self.gens)) or '0'} in {self.ambient!r})"

    def degrees(self) -> list[int]:
        return [g.degree(self.shifts) for g in self.gens]

    def like(self, gens: Iterable) -> "Submodule":
        return Submodule(self.ambient, gens, self.homogeneous)

    @cached_property
    def gb(self) -> GroebnerBasis:
        A = self.ambient
        raw = [g.terms_dict for g in self.gens] + A.base_relations
        elems = buchberger_terms(raw, A.order, A.ring.field) if raw else []
        return GroebnerBasis(A.S, A.rank, A.order, elems, self.gens,
                             [VectorPoly(A.S, A.rank, t) for t in A.base_relations])

    def reduce(self, v: VectorPoly) -> VectorPoly:
        return self.gb.reduce(v)

    def contains(self, v) -> bool:
        if not isinstance(v, VectorPoly):
            v = self.ambient.vector(v) if isinstance(v, (list, tuple)) else self.ambient.vector([v])
        return self.gb.contains(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def _same_ambient(self, other: "Submodule"):
        if other.ambient is not self.ambient:
            a, b = other.ambient, self.ambient
            if not (a.rank == b.rank and a.shifts == b.shifts and a.relations == b.relations
                    and a.ring.S == b.ring.S and a.ring.ideal_gens == b.ring.ideal_gens):
                raise ValueError("submodules of different ambient modules")

    def is_contained_in(self, other: "Submodule") -> bool:
        self._same_ambient(other)
        return all(other.gb.contains(g) for g in self.gens)

    __le__ = is_contained_in

    def __ge__(self, other: "Submodule") -> bool:
        return other.is_contained_in(self)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.is_contained_in(other) and other.is_contained_in(self)

    __hash__ = None

    def is_zero(self) -> bool:
        return all(self.ambient.relation_gb.contains(g) for g in self.gens)

    def is_whole(self) -> bool:
        return self.gb.is_unit()

    def __add__(self, other: "Submodule") -> "Submodule":
        self._same_ambient(other)
        return self.like(self.gens + other.gens)

    def __mul__(self, ideal: "Submodule") -> "Submodule":
        return mult_ideal(ideal, self)

    __rmul__ = __mul__

    # -- derived submodules ---------------------------------------------------
    def trim(self) -> "Submodule":
        return self.like(min_gens(self))

    def power(self, n: int) -> "Submodule":
        """``m^n * self`` for the irrelevant ideal ``m``."""
        out = self
        m = self.ring.maximal_ideal
        for _ in range(n):
            out = mult_ideal(m, out)
        return out

    # -- Hilbert data -----------------------------------------------------------
    def quotient_hilbert(self, d: int) -> int:
        """``dim_k (F/(self + U))_d`` by counting standard monomials."""
        cache = self.__dict__.setdefault("_hf", {})
        if d in cache:
            return cache[d]
        n = self.ring.nvars
        leads: dict[int, list] = {}
        for c, m in self.gb.leading_terms():
            leads.setdefault(c, []).append(m)
        total = 0
        for i, s in enumerate(self.shifts):
            L = leads.get(i, [])
            for u in mon.monomials_of_degree(n, d - s):
                if not any(mon.divides(l, u) for l in L):
                    total += 1
        cache[d] = total
        return total

    def hilbert(self, d: int) -> int:
        """``dim_k ((self + U)/U)_d``."""
        return self.ambient.whole().quotient_hilbert(d) - self.quotient_hilbert(d)

    def quotient_dim(self) -> int:
        """Krull dimension of ``F/(self + U)`` (-1 for the zero module)."""
        leads: dict[int, list] = {}
        for c, m in self.gb.leading_terms():
            leads.setdefault(c, []).append(m)
        return max(monomial_ideal_dim(leads.get(i, []), self.ring.nvars) for i in range(self.rank))


# -- module calculus -------------------------------------------------------------

def colon_elem(N: Submodule, f, M: Submodule | None = None) -> Submodule:
    """``(N :_M f) = {v in M : f v in N}``; ``M`` defaults to the whole ambient."""
    M = N.ambient.whole() if M is None else M
    N._same_ambient(M)
    A = N.ambient
    f = A.S(f)
    if not f:
        log.info("colon by the zero element: returning M by convention")
        return M
    df = f.degree()
    r = A.rank
    pairs = []
    for g in M.gens:
        fg = VectorPoly(A.S, r, {}) if not g else g * f
        pairs.append((fg.terms_dict, g.terms_dict))
    zero = [g.terms_dict for g in N.gens] + A.base_relations
    p_shifts = [s - df for s in A.shifts] if f.is_homogeneous() else list(A.shifts)
    out = tagged_kernel(A.S, r, p_shifts, pairs, r, A.shifts, zero)
    return M.like(VectorPoly(A.S, r, t) for t in out).trim()


def colon_ideal(N: Submodule, I: Submodule, M: Submodule | None = None) -> Submodule:
    """``(N :_M I) = {v in M : I v ⊆ N}`` for an ideal ``I`` of the same ring."""
    M = N.ambient.whole() if M is None else M
    N._same_ambient(M)
    A = N.ambient
    polys = [g.component(0) for g in I.gens]
    polys = [p for p in polys if p]
    if not polys:
        return M
    r = A.rank
    k = len(polys)
    p_shifts = []
    for p in polys:
        p_shifts.extend(s - p.degree() for s in A.shifts)
    pairs = []
    for g in M.gens:
        t = {}
        for l, p in enumerate(polys):
            for (c, m), a in (g * p).terms_dict.items():
                t[(l * r + c, m)] = a
        pairs.append((t, g.terms_dict))
    zero = []
    base = [g.terms_dict for g in N.gens] + A.base_relations
    for l in range(k):
        for z in base:
            zero.append({(l * r + c, m): a for (c, m), a in z.items()})
    out = tagged_kernel(A.S, k * r, p_shifts, pairs, r, A.shifts, zero)
    return M.like(VectorPoly(A.S, r, t) for t in out).trim()


def mult_ideal(I: Submodule, N: Submodule) -> Submodule:
    """The product ``I * N``, with trimmed generators."""
    polys = [g.component(0) for g in I.gens]
    gens = [g * p for p in polys if p for g in N.gens]
    return N.like(gens).trim()


def intersect(N1: Submodule, N2: Submodule) -> Submodule:
    N1._same_ambient(N2)
    A = N1.ambient
    if not N1.gens or not N2.gens:
        return N1.like([])
    pairs = [(g.terms_dict, g.terms_dict) for g in N1.gens]
    zero = [g.terms_dict for g in N2.gens] + A.base_relations
    out = tagged_kernel(A.S, A.rank, A.shifts, pairs, A.rank, A.shifts, zero)
    return N1.like(VectorPoly(A.S, A.rank, t) for t in out).trim()


def annihilator(big: Submodule, small: Submodule) -> Submodule:
    """The ideal ``(small :_R big)`` of the base ring (as a submodule of ``R^1``)."""
    big._same_ambient(small)
    A = big.ambient
    R = A.ring
    F1 = R.free(1)
    gens = [g for g in big.gens if not small.gb.contains(g)]
    if not gens:
        return F1.whole()
    r = A.rank
    k = len(gens)
    homog = big.homogeneous and small.homogeneous
    p_shifts = []
    for g in gens:
        dg = g.degree(A.shifts) if homog else 0
        p_shifts.extend(s - dg for s in A.shifts)
    t = {}
    for l, g in enumerate(gens):
        for (c, m), a in g.terms_dict.items():
            t[(l * r + c, m)] = a
    one = {(0, mon.one(R.nvars)): R.field.one}
    zero = []
    base = [g.terms_dict for g in small.gens] + A.base_relations
    for l in range(k):
        for z in base:
            zero.append({(l * r + c, m): a for (c, m), a in z.items()})
    out = tagged_kernel(A.S, k * r, p_shifts, [(t, one)], 1, (0,), zero)
    return Submodule(F1, [VectorPoly(A.S, 1, f) for f in out], homogeneous=homog)


def is_locally_zero(big: Submodule, small: Submodule) -> bool:
    """Whether ``(big/small)_m = 0``, decided by ``Ann(big/small) + m = (1)``."""
    ann = annihilator(big, small)
    R = big.ring
    F1 = R.free(1)
    test = Submodule(F1, list(ann.gens) + [F1.vector([x]) for x in R.gens], homogeneous=False)
    return test.gb.is_unit()


def min_gens(N: Submodule) -> list[VectorPoly]:
    """A minimal generating subset of the homogeneous submodule ``N`` (graded Nakayama)."""
    if not N.homogeneous:
        return list(N.gens)
    A = N.ambient
    gens = [g for g in N.gens if not A.relation_gb.contains(g)]
    if not gens:
        return []
    by_deg: dict[int, list] = {}
    for g in gens:
        by_deg.setdefault(g.degree(A.shifts), []).append(g)
    kept: list[VectorPoly] = []
    field = A.ring.field
    for d in sorted(by_deg):
        if kept:
            lower = Submodule(A, kept).gb
        else:
            lower = A.relation_gb
        ech = Echelon(field)
        for g in by_deg[d]:
            if ech.add(lower.reduce_raw(g.terms_dict)):
                kept.append(g)
    return kept


class FiniteLengthModule:
    """The subquotient ``big/small`` of an ambient module, expected to have finite length."""

    def __init__(self, big: Submodule, small: Submodule, power_bound: int = 20):
        big._same_ambient(small)
        self.big = big
        self.small = small
        self.power_bound = power_bound
        self._k: int | None = None

    def annihilating_power(self) -> int | None:
        """Least ``k`` with ``m^k big ⊆ small``, searched up to the bound; None if not found."""
        if self._k is not None:
            return self._k
        A = self.big.ambient
        gb = self.small.gb
        field = A.ring.field
        n = A.ring.nvars
        cur = [r for r in (gb.reduce_raw(g.terms_dict) for g in self.big.gens) if r]
        extra = 0
        if self.small.gens and self.big.gens:
            extra = max(0, max(self.small.degrees()) - min(self.big.degrees()))
        bound = self.power_bound + extra
        k = 0
        while cur:
            if k >= bound:
                return None
            ech = Echelon(field)
            nxt = []
            for v in cur:
                for i in range(n):
                    e = mon.variable(i, n)
                    w = gb.reduce_raw({(c, mon.mul(m, e)): a for (c, m), a in v.items()})
                    if w and ech.add(w):
                        nxt.append(w)
            cur = nxt
            k += 1
        self._k = k
        return k

    def is_finite_length(self) -> bool:
        return self.annihilating_power() is not None

    def _require_finite(self) -> int:
        k = self.annihilating_power()
        if k is None:
            ann = annihilator(self.big, self.small)
            dim = monomial_ideal_dim(ann.gb.leading_monomials(), ann.ring.nvars)
            raise NotFiniteLengthError(
                f"module is not of finite length: annihilator has dimension {dim}", ann, dim)
        return k

    def degree_range(self) -> range:
        k = self._require_finite()
        if not self.big.gens:
            return range(0)
        return range(min(self.big.degrees()), max(self.big.degrees()) + k)

    def hilbert(self) -> dict[int, int]:
        out = {}
        for d in self.degree_range():
            v = self.small.quotient_hilbert(d) - self.big.quotient_hilbert(d)
            if v:
                out[d] = v
        return out

    def kdim(self) -> int:
        return sum(self.hilbert().values())

    def krull_dim(self) -> int:
        if self.is_finite_length():
            return 0 if not self.big <= self.small else -1
        ann = annihilator(self.big, self.small)
        return monomial_ideal_dim(ann.gb.leading_monomials(), ann.ring.nvars)


def kdim(Q: FiniteLengthModule) -> int:
    return Q.kdim()
