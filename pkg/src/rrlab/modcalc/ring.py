"""Standard graded algebras ``R = S/J`` and quotients of free ``R``-modules."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Sequence

from ..exact import monomials as mon
from ..exact.polynomial import PolyRing, Polynomial
from ..exact.scalars import Field, QQ
from ..groebner import GroebnerBasis, VectorPoly, buchberger


class InhomogeneousError(ValueError):
    pass


def monomial_ideal_dim(leads: Sequence[tuple], nvars: int) -> int:
    """Krull dimension of ``S/L`` for the monomial ideal ``L`` spanned by ``leads``.

    Returns -1 when ``L`` is the unit ideal.
    """
    leads = [m for m in leads]
    if any(not any(m) for m in leads):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


class GradedRing:
    """``R = k[x_1..x_d]/J`` with ``J`` homogeneous; ``m`` is ``(x_1..x_d)``."""

    def __init__(self, field: Field = QQ, names: Sequence[str] = ("x", "y"), ideal: Sequence = (), name: str = "R"):
        self.S = PolyRing(field, names)
        self.name = name
        gens = []
        for g in ideal:
            p = self.S(g)
            if not p:
                continue
            if not p.is_homogeneous():
                raise InhomogeneousError(f"defining ideal generator {p} is not homogeneous")
            gens.append(p)
        self.ideal_gens = tuple(gens)
        if any(p.is_constant() for p in gens):
            raise ValueError("defining ideal must be proper")
        self._free: dict = {}

    # -- basic data -------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.S.field

    @property
    def nvars(self) -> int:
        return self.S.nvars

    @property
    def names(self) -> tuple:
        return self.S.names

    @property
    def gens(self) -> list[Polynomial]:
        return self.S.gens

    def __call__(self, value) -> Polynomial:
        return self.S(value)

    def __repr__(self):
        base = f"{self.field!r}[{', '.join(self.names)}]"
        if self.ideal_gens:
            return f"{base}/({', '.join(map(str, self.ideal_gens))})"
        return base

    def describe(self) -> str:
        return repr(self)

    @cached_property
    def ideal_gb(self) -> GroebnerBasis | None:
        if not self.ideal_gens:
            return None
        gb = buchberger(self.ideal_gens, mon.degrevlex(self.nvars), ring=self.S, rank=1)
        if gb.is_unit():
            raise ValueError("defining ideal must be proper")
        return gb

    @property
    def is_polynomial_ring(self) -> bool:
        return self.ideal_gb is None

    def ideal_basis(self) -> list[Polynomial]:
        return self.ideal_gb.polys() if self.ideal_gb is not None else []

    def relation_terms(self, rank: int) -> list[dict]:
        """``g * e_i`` for ``g`` in the basis of ``J`` and each component ``i``."""
        return [{(i, m): c for m, c in g.items()} for g in self.ideal_basis() for i in range(rank)]

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.ideal_gb.reduce(f) if self.ideal_gb is not None else f

    def polynomial_ring(self) -> "GradedRing":
        """The ambient polynomial ring ``S`` as a graded ring."""
        if self.is_polynomial_ring:
            return self
        return GradedRing(self.field, self.names, (), name=self.name + "_S")

    def with_field(self, field: Field) -> "GradedRing":
        return GradedRing(field, self.names, [p.map_coefficients(field) for p in self.ideal_gens], self.name)

    # -- modules ----------------------------------------------------------
    def free(self, rank: int = 1, shifts: Sequence[int] | None = None) -> "Ambient":
        shifts = tuple(shifts) if shifts is not None else (0,) * rank
        key = (rank, shifts)
        if key not in self._free:
            self._free[key] = Ambient(self, rank, shifts)
        return self._free[key]

    def ideal(self, gens: Sequence) -> "Submodule":
        from .submodule import Submodule

        F = self.free(1)
        return Submodule(F, [F.vector([self.S(g)]) for g in gens])

    @property
    def maximal_ideal(self) -> "Submodule":
        return self.ideal(self.gens)

    def m_power(self, n: int) -> "Submodule":
        """The ideal ``m^n``."""
        return self.unit_ideal().power(n)

    def unit_ideal(self) -> "Submodule":
        return self.free(1).whole()

    # -- invariants -------------------------------------------------------
    @cached_property
    def krull_dim(self) -> int:
        if self.is_polynomial_ring:
            return self.nvars
        return monomial_ideal_dim(self.ideal_gb.leading_monomials(), self.nvars)

    @cached_property
    def embedding_dim(self) -> int:
        """``dim_k m/m^2``."""
        from .submodule import FiniteLengthModule

        m = self.maximal_ideal
        return FiniteLengthModule(m, self.m_power(2)).kdim()

    @cached_property
    def depth(self) -> int:
        from ..homology import depth

        return depth(self.free(1).whole())

    def is_regular(self) -> bool:
        return self.embedding_dim == self.krull_dim

    def is_cohen_macaulay(self) -> bool:
        return self.depth == self.krull_dim


class Ambient:
    """The graded module ``F/U`` with ``F = R^rank`` (basis degrees ``shifts``).

    ``relations`` lists generators of ``U`` (the multiples ``J*e_i`` are added
    automatically).  Submodules of a quotient module are represented by lifts
    to ``F``; all comparisons are made modulo ``U + J*F``.
    """

    def __init__(self, ring: GradedRing, rank: int, shifts: Sequence[int], relations: Sequence[VectorPoly] = ()):
        self.ring = ring
        self.rank = rank
        self.shifts = tuple(shifts)
        if len(self.shifts) != rank:
            raise ValueError("need one shift per basis vector")
        rels = []
        for v in relations:
            if v.rank != rank:
                raise ValueError("relation has the wrong rank")
            if v and not v.is_homogeneous(self.shifts):
                raise InhomogeneousError(f"relation {v} is not homogeneous")
            if v:
                rels.append(v)
        self.relations = tuple(rels)

    def __repr__(self):
        s = f"{self.ring!r}^{self.rank}"
        if any(self.shifts):
            s += f"(shifts {list(self.shifts)})"
        if self.relations:
            s += f"/<{len(self.relations)} relations>"
        return s

    @property
    def S(self) -> PolyRing:
        return self.ring.S

    @cached_property
    def order(self) -> mon.MonomialOrder:
        return mon.degrevlex(self.ring.nvars, self.shifts)

    @cached_property
    def base_relations(self) -> list[dict]:
        return [v.terms_dict for v in self.relations] + self.ring.relation_terms(self.rank)

    @cached_property
    def relation_gb(self) -> GroebnerBasis:
        from ..groebner import buchberger_terms

        elems = buchberger_terms(self.base_relations, self.order, self.ring.field) if self.base_relations else []
        return GroebnerBasis(self.S, self.rank, self.order, elems)

    @property
    def is_free(self) -> bool:
        return not self.relations

    def vector(self, polys: Sequence) -> VectorPoly:
        if len(polys) != self.rank:
            raise ValueError(f"expected {self.rank} entries")
        terms = {}
        for i, p in enumerate(polys):
            for m, c in self.S(p).items():
                terms[(i, m)] = c
        return VectorPoly(self.S, self.rank, terms)

    def unit(self, i: int) -> VectorPoly:
        return VectorPoly.unit(self.S, self.rank, i)

    def whole(self) -> "Submodule":
        from .submodule import Submodule

        return Submodule(self, [self.unit(i) for i in range(self.rank)])

    def zero(self) -> "Submodule":
        from .submodule import Submodule

        return Submodule(self, [])

    def quotient(self, relations: Sequence[VectorPoly]) -> "Ambient":
        return Ambient(self.ring, self.rank, self.shifts, tuple(self.relations) + tuple(relations))

    def over_polynomial_ring(self) -> "Ambient":
        """The same module regarded over ``S``: ``J*F`` becomes explicit relations."""
        if self.ring.is_polynomial_ring:
            return self
        S = self.ring.polynomial_ring()
        rels = list(self.relations) + [VectorPoly(self.S, self.rank, t) for t in self.ring.relation_terms(self.rank)]
        return Ambient(S, self.rank, self.shifts, rels)

    def degree(self, v: VectorPoly) -> int:
        return v.degree(self.shifts)
