"""Degreewise linear-algebra oracle.

Every graded piece of a submodule ``N`` of ``F/U`` is computed directly as
the span of the monomial multiples of its generators inside ``F_d``, together
with the relation piece ``(U + J F)_d``.  Nothing here touches Groebner bases,
so the results serve as an independent check on the Groebner-based calculus.

All spaces are lifts to ``F_d``: the piece of ``N`` in degree ``d`` is
``N_d + (U + J F)_d``.  Two submodules agree in degree ``d`` exactly when
these lifted spaces agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from ..exact import monomials as mon
from ..groebner import VectorPoly
from .linalg import Echelon, kernel
from .ring import Ambient

DEFAULT_DEGREE_BOUND = 12


class DegreewiseOracle:
    """Graded pieces of submodules of one ambient module, cached per degree."""

    def __init__(self, ambient: Ambient):
        self.ambient = ambient
        self.field = ambient.ring.field
        self.nvars = ambient.ring.nvars
        self._rel_gens = [v.terms_dict for v in ambient.relations]
        self._rel_gens += [{(i, m): c for m, c in g.items()}
                           for g in ambient.ring.ideal_gens for i in range(ambient.rank)]
        self._rel_cache: dict[int, Echelon] = {}

    # -- raw pieces -----------------------------------------------------------
    def _deg(self, t: dict) -> int:
        c, m = next(iter(t))
        return sum(m) + self.ambient.shifts[c]

    def _multiples(self, gens: Sequence[dict], d: int, min_mult: int = 0):
        for g in gens:
            k = d - self._deg(g)
            if k < min_mult:
                continue
            for u in mon.monomials_of_degree(self.nvars, k):
                yield {(c, mon.mul(m, u)): a for (c, m), a in g.items()}

    def basis_of_degree(self, d: int) -> list[tuple]:
        out = []
        for i, s in enumerate(self.ambient.shifts):
            out.extend((i, u) for u in mon.monomials_of_degree(self.nvars, d - s))
        return out

    def relations(self, d: int) -> Echelon:
        """``(U + J F)_d``."""
        if d not in self._rel_cache:
            self._rel_cache[d] = Echelon(self.field).extend(self._multiples(self._rel_gens, d))
        return self._rel_cache[d]

    def _with_relations(self, d: int) -> Echelon:
        e = Echelon(self.field)
        e.rows = {p: dict(r) for p, r in self.relations(d).rows.items()}
        return e

    def piece(self, gens: Sequence, d: int, min_mult: int = 0) -> Echelon:
        """Lift of ``(m^min_mult * span(gens))_d``.

        Since ``m^j`` is spanned by the monomials of degree at least ``j``,
        the piece is spanned by ``u * g`` with ``deg u = d - deg g >= j``.
        """
        raw = [g.terms_dict if isinstance(g, VectorPoly) else g for g in gens]
        raw = [g for g in raw if g]
        return self._with_relations(d).extend(self._multiples(raw, d, min_mult))

    def whole(self, d: int) -> Echelon:
        e = Echelon(self.field)
        for b in self.basis_of_degree(d):
            e.add({b: self.field.one})
        return e

    # -- operations on pieces -------------------------------------------------
    def mul_poly(self, v: dict, f) -> dict:
        red = self.field.reduce
        out: dict = {}
        for u, a in f.items():
            for (c, m), b in v.items():
                t = (c, mon.mul(m, u))
                out[t] = out.get(t, 0) + a * b
        return {t: w for t, w in ((t, red(w)) for t, w in out.items()) if w}

    def preimage(self, source: Echelon, maps: Sequence, targets: Sequence[Echelon]) -> Echelon:
        """``{v in source : f(v) in target}`` for each paired map and target space."""
        basis = source.basis()
        images = []
        for v in basis:
            img = {}
            for l, (f, tgt) in enumerate(zip(maps, targets)):
                for k, a in tgt.reduce(f(v)).items():
                    img[(l, k)] = a
            images.append(img)
        out = self._with_relations_like(source)
        for c in kernel(self.field, images):
            w: dict = {}
            for i, a in c.items():
                for k, b in basis[i].items():
                    w[k] = self.field.reduce(w.get(k, 0) + a * b)
            out.add({k: a for k, a in w.items() if a})
        return out

    def _with_relations_like(self, source: Echelon) -> Echelon:
        # every lifted space contains the relation piece of its own degree
        e = Echelon(self.field)
        if source.rows:
            any_row = next(iter(source.rows.values()))
            d = self._deg(any_row)
            e.rows = {p: dict(r) for p, r in self.relations(d).rows.items()}
        return e

    def intersect(self, a: Echelon, b: Echelon) -> Echelon:
        ba = a.basis()
        images = [b.reduce(v) for v in ba]
        out = Echelon(self.field)
        for c in kernel(self.field, images):
            w: dict = {}
            for i, x in c.items():
                for k, y in ba[i].items():
                    w[k] = self.field.reduce(w.get(k, 0) + x * y)
            out.add({k: x for k, x in w.items() if x})
        return out


@dataclass
class OracleResult:
    """Outcome of :func:`oracle_eval`.

    ``spaces`` maps each degree ``d <= bound`` to the lifted piece of the
    answer; ``dims`` records ``dim_k`` of the answer modulo relations.
    ``conclusive`` is False when the bound cannot see the inputs, or (for the
    Ratliff-Rush chain) when some degree was still growing at the cutoff;
    ``reason`` explains which.  For ``member`` the answer is ``value``.
    """

    kind: str
    bound: int
    conclusive: bool
    spaces: dict = dc_field(default_factory=dict)
    dims: dict = dc_field(default_factory=dict)
    value: object = None
    reason: str = ""
    chain: dict = dc_field(default_factory=dict)

    def agrees_with(self, N, lo: int = 0) -> bool:
        """Whether the generator span of ``N`` has the same pieces in degrees ``lo..bound``."""
        orc = DegreewiseOracle(N.ambient)
        for d in range(lo, self.bound + 1):
            if d not in self.spaces:
                continue
            if orc.piece(N.gens, d) != self.spaces[d]:
                return False
        return True

    def mismatches(self, N, lo: int = 0) -> list[int]:
        orc = DegreewiseOracle(N.ambient)
        return [d for d in range(lo, self.bound + 1)
                if d in self.spaces and orc.piece(N.gens, d) != self.spaces[d]]


def _max_gen_degree(*subs) -> int:
    degs = [d for s in subs if s is not None for d in s.degrees()]
    return max(degs) if degs else 0


def _finish(kind, D, orc, spaces, need, extra_reason="", chain=None):
    dims = {d: len(e) - len(orc.relations(d)) for d, e in spaces.items()}
    ok = D >= need and not extra_reason
    reason = extra_reason
    if D < need:
        reason = f"inconclusive below degree {need}: bound {D} does not reach the input generators"
    return OracleResult(kind, D, ok, spaces, dims, None, reason, chain or {})


def oracle_eval(task: dict, D: int = DEFAULT_DEGREE_BOUND) -> OracleResult:
    """Recompute one module-calculus operation degree by degree up to ``D``.

    ``task["kind"]`` is one of ``colon`` (keys ``N``, ``f``, ``M``),
    ``colon_ideal`` (``N``, ``I``, ``M``), ``intersect`` (``N1``, ``N2``),
    ``product`` (``I``, ``N``), ``member`` (``v``, ``N``) or
    ``ratliff_rush`` (``M``, ``n``).
    """
    kind = task["kind"]
    if kind == "member":
        N = task["N"]
        v = task["v"]
        orc = DegreewiseOracle(N.ambient)
        if not isinstance(v, VectorPoly):
            v = N.ambient.vector(v) if isinstance(v, (list, tuple)) else N.ambient.vector([v])
        if not v:
            return OracleResult(kind, D, True, value=True)
        d = v.degree(N.shifts)
        res = orc.piece(N.gens, d).contains(v.terms_dict)
        return OracleResult(kind, D, d <= D, value=res,
                            reason="" if d <= D else f"inconclusive below degree {d}")
    if kind == "product":
        I, N = task["I"], task["N"]
        orc = DegreewiseOracle(N.ambient)
        prods = []
        for g in I.gens:
            p = g.component(0)
            for h in N.gens:
                if p:
                    prods.append((h * p).terms_dict)
        spaces = {d: orc.piece(prods, d) for d in range(D + 1)}
        return _finish(kind, D, orc, spaces, _max_gen_degree(I) + _max_gen_degree(N))
    if kind == "intersect":
        N1, N2 = task["N1"], task["N2"]
        orc = DegreewiseOracle(N1.ambient)
        spaces = {d: orc.intersect(orc.piece(N1.gens, d), orc.piece(N2.gens, d)) for d in range(D + 1)}
        return _finish(kind, D, orc, spaces, _max_gen_degree(N1, N2))
    if kind == "colon":
        N, M = task["N"], task.get("M")
        A = N.ambient
        M_gens = M.gens if M is not None else [A.unit(i) for i in range(A.rank)]
        orc = DegreewiseOracle(A)
        f = A.S(task["f"])
        if not f:
            spaces = {d: orc.piece(M_gens, d) for d in range(D + 1)}
            return _finish(kind, D, orc, spaces, 0)
        df = f.degree()
        spaces = {}
        for d in range(D + 1):
            tgt = orc.piece(N.gens, d + df)
            spaces[d] = orc.preimage(orc.piece(M_gens, d), [lambda v: orc.mul_poly(v, f)], [tgt])
        return _finish(kind, D, orc, spaces, _max_gen_degree(N, M))
    if kind == "colon_ideal":
        N, I, M = task["N"], task["I"], task.get("M")
        A = N.ambient
        M_gens = M.gens if M is not None else [A.unit(i) for i in range(A.rank)]
        orc = DegreewiseOracle(A)
        polys = [p for p in (g.component(0) for g in I.gens) if p]
        spaces = {}
        for d in range(D + 1):
            src = orc.piece(M_gens, d)
            if polys:
                maps = [(lambda v, p=p: orc.mul_poly(v, p)) for p in polys]
                tgts = [orc.piece(N.gens, d + p.degree()) for p in polys]
                src = orc.preimage(src, maps, tgts)
            spaces[d] = src
        return _finish(kind, D, orc, spaces, _max_gen_degree(N, M))
    if kind == "ratliff_rush":
        return _ratliff_rush(task["M"], task["n"], D)
    raise ValueError(f"unknown oracle task {kind!r}")


def _colon_by_m(orc: DegreewiseOracle, src: Echelon, target: Echelon) -> Echelon:
    n = orc.nvars
    maps = [(lambda v, i=i: {(c, mon.mul(m, mon.variable(i, n))): a for (c, m), a in v.items()})
            for i in range(n)]
    return orc.preimage(src, maps, [target] * n)


def _ratliff_rush(M, n: int, D: int) -> OracleResult:
    """The chain ``T_k = (m^(n+k) M :_M m^k)`` in each degree ``d <= D``.

    In degree ``d`` the chain is followed for ``k = 1 .. D - d`` (at least 1).
    Every space found is contained in the Ratliff-Rush closure, since each of
    its vectors ``v`` satisfies ``m^k v ⊆ m^(n+k) M`` for an explicit ``k``.
    A degree whose chain grew at its last step is flagged.
    """
    A = M.ambient
    orc = DegreewiseOracle(A)
    gens = list(M.gens)
    memo: dict = {}

    def colon_piece(j: int, k: int, d: int) -> Echelon:
        # (m^(j+k) M :_M m^k)_d = ((m^(j+k) M :_M m^(k-1))_(d+1) :_M m)_d
        key = (j, k, d)
        if key not in memo:
            if k == 0:
                memo[key] = orc.piece(gens, d, min_mult=j)
            else:
                memo[key] = _colon_by_m(orc, orc.piece(gens, d), colon_piece(j + 1, k - 1, d + 1))
        return memo[key]

    spaces = {}
    chain = {}
    growing = []
    for d in range(D + 1):
        full = len(orc.piece(gens, d))
        kmax = max(1, D - d)
        dims = []
        best = None
        for k in range(1, kmax + 1):
            best = colon_piece(n, k, d)
            dims.append(len(best) - len(orc.relations(d)))
            if len(best) == full:
                break
        chain[d] = dims
        spaces[d] = best
        if len(best) != full and (len(dims) < 2 or dims[-1] != dims[-2]):
            growing.append(d)
    reason = f"chain still growing at the cutoff in degrees {growing}" if growing else ""
    out = _finish("ratliff_rush", D, orc, spaces, _max_gen_degree(M) + n, reason, chain)
    out.value = {"growing": growing}
    return out
