"""Graded free resolutions over ``R = S/J`` and their Betti tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..exact import monomials as mon
from ..groebner import VectorPoly, tagged_kernel
from ..modcalc.ring import Ambient, GradedRing
from ..modcalc.submodule import Submodule, min_gens


class ResolutionError(AssertionError):
    """A differential failed to compose to zero, or a minimal map has a unit entry."""


@dataclass
class FreeMap:
    """A graded map ``R^src -> M`` given by the images of the basis vectors.

    ``target`` is the ambient module holding the images (a free module, or a
    quotient ``F/U`` for the augmentation onto a module).
    """

    target: Ambient
    src_shifts: tuple
    columns: list

    @property
    def ring(self) -> GradedRing:
        return self.target.ring

    @property
    def src_rank(self) -> int:
        return len(self.src_shifts)

    def source(self) -> Ambient:
        return self.ring.free(self.src_rank, self.src_shifts)

    def kernel(self) -> Submodule:
        """``{a in R^src : sum a_k columns_k = 0 in target}``."""
        T = self.target
        S = T.S
        one = mon.one(S.nvars)
        pairs = [(c.terms_dict, {(k, one): S.field.one}) for k, c in enumerate(self.columns)]
        out = tagged_kernel(S, T.rank, T.shifts, pairs, self.src_rank, self.src_shifts, T.base_relations)
        return Submodule(self.source(), [VectorPoly(S, self.src_rank, t) for t in out])

    def image(self) -> Submodule:
        return Submodule(self.target, self.columns)

    def entry(self, row: int, col: int):
        return self.columns[col].component(row)

    def transpose(self) -> "FreeMap":
        """The dual map ``Hom(target, R) -> Hom(src, R)``; only for free targets."""
        if self.target.relations:
            raise ValueError("transpose needs a free target")
        R = self.ring
        S = self.target.S
        new_target = R.free(self.src_rank, tuple(-s for s in self.src_shifts))
        cols = []
        for j in range(self.target.rank):
            t = {}
            for k, c in enumerate(self.columns):
                for (cj, m), a in c.terms_dict.items():
                    if cj == j:
                        t[(k, m)] = a
            cols.append(VectorPoly(S, self.src_rank, t))
        return FreeMap(new_target, tuple(-s for s in self.target.shifts), cols)

    def compose_is_zero(self, after: "FreeMap") -> bool:
        """Whether ``after ∘ self`` vanishes, where ``self`` maps into ``after``'s source."""
        T = after.target
        gb = T.relation_gb
        S = T.S
        for c in self.columns:
            acc: dict = {}
            for (k, m), a in c.terms_dict.items():
                for t, b in after.columns[k].terms_dict.items():
                    key = (t[0], mon.mul(t[1], m))
                    acc[key] = S.field.reduce(acc.get(key, 0) + a * b)
            acc = {t: v for t, v in acc.items() if v}
            if acc and gb.reduce_raw(acc):
                return False
        return True

    def has_unit_entry(self) -> bool:
        for c in self.columns:
            if any(not any(m) for (_, m) in c.terms_dict):
                return True
        return False


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta[i, j]`` = number of ``R(-j)`` summands of ``F_i``."""

    entries: dict
    complete: bool
    length: int

    def betti(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def pd(self) -> int | None:
        if not self.complete:
            return None
        return max((i for i, _ in self.entries), default=-1)

    @property
    def reg(self) -> int | None:
        if not self.entries:
            return None
        return max(j - i for i, j in self.entries)

    def ranks(self) -> list[int]:
        out = [0] * (self.length + 1)
        for (i, _), b in self.entries.items():
            out[i] += b
        return out

    def to_json(self) -> dict:
        return {
            "betti": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
            "complete": self.complete,
            "length": self.length,
            "pd": self.pd,
            "reg": self.reg,
        }

    def format(self) -> str:
        """Macaulay-style table: row ``j - i``, column ``i``."""
        if not self.entries:
            return "0"
        cols = range(self.length + 1)
        rows = sorted({j - i for i, j in self.entries})
        width = max(3, max(len(str(b)) for b in self.entries.values()) + 1)
        lines = ["      " + "".join(f"{i:>{width}}" for i in cols)]
        for r in rows:
            cells = []
            for i in cols:
                b = self.betti(i, i + r)
                cells.append(f"{b if b else '.':>{width}}")
            lines.append(f"{r:>4}: " + "".join(cells))
        lines.append("total:" + "".join(f"{t:>{width}}" for t in self.ranks()))
        return "\n".join(lines)


class Resolution:
    """A graded free resolution ``... -> F_1 -> F_0 -> N -> 0``, built on demand.

    ``maps[0]`` is the augmentation ``F_0 -> N`` and ``maps[i]`` the
    differential ``F_i -> F_(i-1)``.  ``complete`` is set once a zero kernel
    has been reached.
    """

    def __init__(self, N: Submodule, minimal: bool = True):
        if not N.homogeneous:
            raise ValueError("resolutions need a graded module")
        self.module = N
        self.ring = N.ring
        self.minimal = minimal
        gens = min_gens(N) if minimal else [g for g in N.gens if not N.ambient.relation_gb.contains(g)]
        shifts = tuple(g.degree(N.shifts) for g in gens)
        self.maps: list[FreeMap] = [FreeMap(N.ambient, shifts, list(gens))]
        self.complete = not gens

    @property
    def length(self) -> int:
        """Index of the last free module computed."""
        return len(self.maps) - 1

    def shifts(self, i: int) -> tuple:
        return self.maps[i].src_shifts if i < len(self.maps) else ()

    def rank(self, i: int) -> int:
        return len(self.shifts(i))

    def extend_to(self, length: int) -> "Resolution":
        while not self.complete and self.length < length:
            last = self.maps[-1]
            K = last.kernel()
            if self.minimal:
                gens = min_gens(K)
            else:
                gens = [g for g in K.gens if not K.ambient.relation_gb.contains(g)]
            if not gens:
                self.complete = True
                break
            shifts = tuple(g.degree(K.shifts) for g in gens)
            self.maps.append(FreeMap(last.source(), shifts, list(gens)))
        return self

    def extend_until_complete(self, cap: int = 64) -> "Resolution":
        self.extend_to(cap)
        if not self.complete:
            raise RuntimeError(f"resolution did not terminate within {cap} steps")
        return self

    def differential(self, i: int) -> FreeMap:
        return self.maps[i]

    def betti(self) -> BettiTable:
        entries: dict = {}
        for i, f in enumerate(self.maps):
            for s in f.src_shifts:
                entries[(i, s)] = entries.get((i, s), 0) + 1
        nonzero = [i for i, f in enumerate(self.maps) if f.src_shifts]
        return BettiTable(entries, self.complete, max(nonzero, default=0))

    @property
    def pd(self) -> int | None:
        if not self.complete:
            return None
        return max((i for i, f in enumerate(self.maps) if f.src_shifts), default=-1)

    def check(self) -> None:
        """Assert the complex property and, for minimal resolutions, no unit entries."""
        for i in range(1, len(self.maps)):
            if not self.maps[i].compose_is_zero(self.maps[i - 1]):
                raise ResolutionError(f"d_{i - 1} ∘ d_{i} is not zero")
            if self.minimal and self.maps[i].has_unit_entry():
                raise ResolutionError(f"d_{i} has a unit entry")


def resolve(N: Submodule, length: int | None = None, minimal: bool = True) -> Resolution:
    """Minimal graded free resolution of ``N`` up to ``F_length``.

    With ``length=None`` the resolution is run until it terminates, which is
    guaranteed over a polynomial ring.
    """
    res = Resolution(N, minimal)
    if length is None:
        if not N.ring.is_polynomial_ring:
            raise ValueError("an explicit length is needed over a quotient ring")
        res.extend_until_complete(N.ring.nvars + 2)
    else:
        res.extend_to(length)
    return res


def over_polynomial_ring(N: Submodule) -> Submodule:
    """``N`` regarded as a module over the ambient polynomial ring."""
    A = N.ambient.over_polynomial_ring()
    return Submodule(A, N.gens, N.homogeneous)


def quotient_module(N: Submodule) -> Submodule:
    """The module ``F/(N + U)`` as the whole of a quotient ambient."""
    A = N.ambient.quotient(N.gens)
    return A.whole()


def free_module(ring: GradedRing, shifts: Sequence[int]) -> Submodule:
    return ring.free(len(shifts), tuple(shifts)).whole()
