"""The associated graded module ``G(M) = ⊕ m^n M / m^(n+1) M`` over ``P = k[y_1..y_d]``.

The Rees module ``⊕ m^n M t^n`` is presented over ``k[x, y]`` by eliminating
``t`` from the relations ``y_i - x_i t``; setting ``x = 0`` in that
presentation leaves ``G(M)`` over ``P``, graded by filtration degree.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exact import monomials as mon
from ..exact.polynomial import PolyRing
from ..groebner import VectorPoly, tagged_kernel
from ..modcalc.ring import Ambient, GradedRing
from ..modcalc.submodule import FiniteLengthModule, Submodule, min_gens


class InvariantBreach(AssertionError):
    """An internal cross-check failed (never an expected outcome)."""


@dataclass
class AssocGraded:
    """``G(M)`` presented as ``P^r / relations`` with all generators in filtration degree 0."""

    P: GradedRing
    ambient: Ambient
    gen_degrees: tuple
    relations: tuple
    checked_up_to: int = -1

    @property
    def module(self) -> Submodule:
        return self.ambient.whole()

    @property
    def rank(self) -> int:
        return self.ambient.rank

    def hilbert(self, n: int) -> int:
        """``dim_k G(M)_n``."""
        return self.ambient.zero().quotient_hilbert(n)

    def initial_form(self, f) -> object:
        """The image in ``P`` of a linear form of the base ring."""
        P = self.P.S
        terms = {}
        for m, c in f.items():
            if sum(m) != 1:
                raise ValueError("initial forms are only taken of linear forms here")
            terms[m] = c
        return P.from_dict(terms)

    def to_json(self, field) -> dict:
        return {
            "rank": self.rank,
            "generator_degrees": list(self.gen_degrees),
            "relations": [str(v) for v in self.relations],
            "hilbert_checked_up_to": self.checked_up_to,
        }


def _rees_ring(S: PolyRing) -> PolyRing:
    d = S.nvars
    names = ["t_"] + [f"{a}_" for a in S.names] + [f"{a}_t" for a in S.names]
    return PolyRing(S.field, names)


def _lift(terms: dict, d: int) -> dict:
    """Embed ``{(c, m): a}`` over ``k[x]`` into ``k[t, x, y]``."""
    pad = (0,) * d
    return {(c, (0,) + m + pad): a for (c, m), a in terms.items()}


def rees_presentation(M: Submodule) -> tuple[list[VectorPoly], list[int], PolyRing]:
    """Generators of the relation module of the Rees module of ``M`` over ``k[x, y]``.

    Returns (relations in ``k[t, x, y]^r`` free of ``t``, generator degrees, ring).
    """
    A = M.ambient
    S = A.S
    d = S.nvars
    T = _rees_ring(S)
    gens = min_gens(M)
    degs = [g.degree(A.shifts) for g in gens]
    r = len(gens)
    one = mon.one(T.nvars)
    pairs = [(_lift(g.terms_dict, d), {(i, one): S.field.one}) for i, g in enumerate(gens)]
    zero = [_lift(z, d) for z in A.base_relations]
    # (y_j - x_j t) e_c for every component of the ambient
    for c in range(A.rank):
        for j in range(d):
            y = [0] * T.nvars
            y[1 + d + j] = 1
            xt = [0] * T.nvars
            xt[0] = 1
            xt[1 + j] = 1
            zero.append({(c, tuple(y)): S.field.one, (c, tuple(xt)): S.field(-1)})
    weights = (1,) + (1,) * d + (2,) * d
    out = tagged_kernel(T, A.rank, A.shifts, pairs, r, degs, zero, elim=1, weights=weights)
    return [VectorPoly(T, r, f) for f in out], degs, T


def assoc_graded(M: Submodule, check_bound: int = 8, powers=None) -> AssocGraded:
    """Present ``G(M)`` over ``P`` and cross-check its Hilbert function up to ``check_bound``.

    ``powers(n)`` may supply cached ``m^n M``; by default they are recomputed.
    """
    R = M.ring
    S = R.S
    d = S.nvars
    rels, degs, T = rees_presentation(M)
    P = GradedRing(R.field, [a.upper() if a.upper() != a else a + "_" for a in S.names], (), name=f"G({R.name})")
    r = len(degs)
    out = []
    for v in rels:
        t = {}
        for (c, m), a in v.terms_dict.items():
            if any(m[1:1 + d]):
                continue  # set x = 0
            t[(c, m[1 + d:])] = a
        if t:
            out.append(VectorPoly(P.S, r, t))
    amb = Ambient(P, r, (0,) * r, out)
    G = AssocGraded(P, amb, tuple(degs), tuple(out))
    if check_bound >= 0:
        if powers is None:
            cache = {0: M}

            def powers(n):
                if n not in cache:
                    cache[n] = powers(n - 1).power(1)
                return cache[n]
        for n in range(check_bound + 1):
            expect = FiniteLengthModule(powers(n), powers(n + 1)).kdim()
            got = G.hilbert(n)
            if got != expect:
                raise InvariantBreach(
                    f"associated graded Hilbert check failed in degree {n}: {got} != {expect}")
        G.checked_up_to = check_bound
    return G


def strata_hilbert(M: Submodule, n: int) -> int:
    """``dim_k m^n M / m^(n+1) M`` from internal degrees alone.

    Since ``m^n = R_{>=n}``, the piece of ``m^n M`` in degree ``e`` is spanned
    by the generators of degree at most ``e - n``; summing the successive
    quotients over ``e`` gives the filtration piece without any powers.
    """
    from ..modcalc.oracle import DegreewiseOracle

    orc = DegreewiseOracle(M.ambient)
    gens = min_gens(M)
    if not gens:
        return 0
    degs = sorted({g.degree(M.shifts) for g in gens})
    total = 0
    for e in range(degs[0] + n, degs[-1] + n + 1):
        total += len(orc.piece(gens, e, min_mult=n)) - len(orc.piece(gens, e, min_mult=n + 1))
    return total
