"""Buchberger's algorithm for submodules of free modules over ``k[x_1..x_d]``.

Vectors are handled internally as ``{(component, monomial): coeff}`` dicts.
Pairs are selected by the normal strategy with sugar; useless pairs are
discarded with the Gebauer-Moeller update (chain criterion, plus the product
criterion when the rank is one).
"""

from __future__ import annotations

import heapq
import itertools
from typing import Iterable, Sequence

from ..exact import monomials as mon
from ..exact.monomials import MonomialOrder
from ..exact.polynomial import PolyRing, Polynomial
from ..exact.scalars import Field
from .vectors import VectorPoly

# Re-run the S-pair test on every basis produced (the test suite and --gb-check turn it on).
SELF_CHECK = False

STATS = {"computed": 0, "verified": 0}


class GroebnerError(AssertionError):
    """A computed basis failed its own S-pair test."""


def _divisor(by_comp: dict, comp: int, m: tuple):
    for lm, g in by_comp.get(comp, ()):
        for a, b in zip(lm, m):
            if a > b:
                break
        else:
            return lm, g
    return None


def reduce_terms(f: dict, by_comp: dict, keyfn, mod: int) -> dict:
    """Full normal form of ``f`` against monic reducers grouped by lead component."""
    f = dict(f)
    rem = {}
    while f:
        t = max(f, key=keyfn)
        c = f[t]
        comp, m = t
        hit = _divisor(by_comp, comp, m)
        if hit is None:
            rem[t] = c
            del f[t]
            continue
        lm, g = hit
        q = [b - a for a, b in zip(lm, m)]
        for (gc, gm), gv in g.items():
            tt = (gc, tuple([a + b for a, b in zip(gm, q)]))
            v = f.get(tt, 0) - c * gv
            if mod:
                v %= mod
            if v:
                f[tt] = v
            else:
                f.pop(tt, None)
    return rem


def _monic(f: dict, keyfn, field: Field):
    lt = max(f, key=keyfn)
    c = f[lt]
    if c != 1:
        ic = field.inv(c)
        red = field.reduce
        f = {t: red(v * ic) for t, v in f.items()}
    return f, lt


def _spoly(f: dict, lf, g: dict, lg, mod: int) -> dict:
    comp = lf[0]
    L = mon.lcm(lf[1], lg[1])
    qf = mon.quotient(L, lf[1])
    qg = mon.quotient(L, lg[1])
    out = {}
    for (c, m), v in f.items():
        out[(c, tuple([a + b for a, b in zip(m, qf)]))] = v
    for (c, m), v in g.items():
        t = (c, tuple([a + b for a, b in zip(m, qg)]))
        w = out.get(t, 0) - v
        if mod:
            w %= mod
        if w:
            out[t] = w
        else:
            out.pop(t, None)
    assert (comp, L) not in out
    return out


def _sugar(f: dict, order: MonomialOrder) -> int:
    return max(order.term_degree(t) for t in f)


def buchberger_terms(gens: Iterable[dict], order: MonomialOrder, field: Field,
                     product_criterion: bool | None = None) -> list[dict]:
    """Reduced Groebner basis of the module generated by ``gens`` (raw dicts).

    Returns monic elements sorted by increasing leading term.
    """
    keyfn = order.keyfn
    mod = field.characteristic
    gens = [g for g in gens if g]
    if product_criterion is None:
        product_criterion = all(c == 0 for g in gens for c, _ in g)

    G: list[tuple[dict, tuple, int]] = []   # (terms, lead term, sugar)
    active: list[int] = []
    by_comp: dict[int, list] = {}
    pairs: set[tuple[int, int]] = set()
    heap: list = []
    counter = itertools.count()

    def lcm_of(i, j):
        return mon.lcm(G[i][1][1], G[j][1][1])

    def push(i, j):
        a, b = (i, j) if i < j else (j, i)
        L = lcm_of(a, b)
        comp = G[a][1][0]
        dL = order.term_degree((comp, L))
        si = G[a][2] + dL - order.term_degree(G[a][1])
        sj = G[b][2] + dL - order.term_degree(G[b][1])
        pairs.add((a, b))
        heapq.heappush(heap, (max(si, sj), keyfn((comp, L)), next(counter), a, b))

    def add(h: dict, sugar: int):
        h, lt = _monic(h, keyfn, field)
        hi = len(G)
        G.append((h, lt, sugar))
        comp, hm = lt
        cands = [j for j in active if G[j][1][0] == comp]
        lc = {j: mon.lcm(hm, G[j][1][1]) for j in cands}
        cop = {j: product_criterion and mon.coprime(hm, G[j][1][1]) for j in cands}
        C = list(cands)
        D: list[int] = []
        while C:
            j = C.pop()
            if cop[j]:
                D.append(j)
                continue
            Lj = lc[j]
            if any(mon.divides(lc[k], Lj) for k in C) or any(mon.divides(lc[k], Lj) for k in D):
                continue
            D.append(j)
        E = [j for j in D if not cop[j]]
        for (a, b) in list(pairs):
            if G[a][1][0] != comp:
                continue
            Lab = lcm_of(a, b)
            if (mon.divides(hm, Lab) and mon.lcm(G[a][1][1], hm) != Lab
                    and mon.lcm(hm, G[b][1][1]) != Lab):
                pairs.discard((a, b))
        for j in E:
            push(j, hi)
        keep = [j for j in active if not (G[j][1][0] == comp and mon.divides(hm, G[j][1][1]))]
        keep.append(hi)
        active[:] = keep
        by_comp.clear()
        for j in active:
            by_comp.setdefault(G[j][1][0], []).append((G[j][1][1], G[j][0]))

    for g in sorted(gens, key=lambda f: (_sugar(f, order), keyfn(max(f, key=keyfn)))):
        h = reduce_terms(g, by_comp, keyfn, mod)
        if h:
            add(h, _sugar(g, order))

    while heap:
        sugar, _, _, a, b = heapq.heappop(heap)
        if (a, b) not in pairs:
            continue
        pairs.discard((a, b))
        s = _spoly(G[a][0], G[a][1], G[b][0], G[b][1], mod)
        if not s:
            continue
        h = reduce_terms(s, by_comp, keyfn, mod)
        if h:
            add(h, sugar)

    basis = sorted((G[j] for j in active), key=lambda e: keyfn(e[1]))
    out = []
    for idx, (f, lt, _) in enumerate(basis):
        others: dict[int, list] = {}
        for j, (g, lg, _) in enumerate(basis):
            if j != idx:
                others.setdefault(lg[0], []).append((lg[1], g))
        r = reduce_terms(f, others, keyfn, mod)
        basis[idx] = (r, lt, 0)
        out.append(r)
    STATS["computed"] += 1
    if SELF_CHECK:
        check_terms(out, order, field)
    return out


def check_terms(basis: Sequence[dict], order: MonomialOrder, field: Field) -> None:
    """Assert that every S-pair of ``basis`` reduces to zero (no criteria applied)."""
    keyfn = order.keyfn
    mod = field.characteristic
    leads = []
    by_comp: dict[int, list] = {}
    for f in basis:
        f, lt = _monic(f, keyfn, field)
        leads.append((f, lt))
        by_comp.setdefault(lt[0], []).append((lt[1], f))
    for (f, lf), (g, lg) in itertools.combinations(leads, 2):
        if lf[0] != lg[0]:
            continue
        s = _spoly(f, lf, g, lg, mod)
        if s and reduce_terms(s, by_comp, keyfn, mod):
            raise GroebnerError("S-pair does not reduce to zero")
    STATS["verified"] += 1


class GroebnerBasis:
    """A reduced Groebner basis of a submodule of ``S^rank``.

    ``generators`` are the input vectors (kept for syzygy tracking) and
    ``relations`` the ambient relations that were adjoined (for a quotient
    ring ``S/J`` these are the multiples ``J * e_i``).
    """

    def __init__(self, ring: PolyRing, rank: int, order: MonomialOrder, elements: list[dict],
                 generators: Sequence[VectorPoly] = (), relations: Sequence[VectorPoly] = ()):
        self.ring = ring
        self.rank = rank
        self.order = order
        self._elements = elements
        self.generators = tuple(generators)
        self.relations = tuple(relations)
        self.reduced = True
        keyfn = order.keyfn
        self._leads = [max(f, key=keyfn) for f in elements]
        self._by_comp: dict[int, list] = {}
        for f, lt in zip(elements, self._leads):
            self._by_comp.setdefault(lt[0], []).append((lt[1], f))

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def elements(self) -> list[VectorPoly]:
        return [VectorPoly(self.ring, self.rank, f) for f in self._elements]

    @property
    def raw(self) -> list[dict]:
        return self._elements

    def polys(self) -> list[Polynomial]:
        if self.rank != 1:
            raise ValueError("not an ideal basis")
        return [v.component(0) for v in self.elements]

    def leading_terms(self) -> list[tuple]:
        return list(self._leads)

    def leading_monomials(self, comp: int | None = None) -> list[tuple]:
        return [m for c, m in self._leads if comp is None or c == comp]

    def is_unit(self) -> bool:
        """True when the basis generates the whole free module."""
        return all(any(not any(m) for c, m in self._leads if c == i) for i in range(self.rank))

    def reduce_raw(self, f: dict) -> dict:
        return reduce_terms(f, self._by_comp, self.order.keyfn, self.ring.field.characteristic)

    def reduce(self, v) -> VectorPoly | Polynomial:
        if isinstance(v, Polynomial):
            r = self.reduce_raw({(0, m): c for m, c in v.items()})
            return Polynomial(self.ring, {m: c for (_, m), c in r.items()})
        return VectorPoly(self.ring, self.rank, self.reduce_raw(v.terms_dict))

    normal_form = reduce

    def contains(self, v) -> bool:
        if isinstance(v, Polynomial):
            return not self.reduce_raw({(0, m): c for m, c in v.items()})
        return not self.reduce_raw(v.terms_dict)

    def check(self) -> None:
        check_terms(self._elements, self.order, self.ring.field)

    def syzygies(self, shifts: Sequence[int] | None = None) -> list[VectorPoly]:
        return syzygies(self.generators, self.order.shifts if shifts is None else shifts, self.relations)


def _as_terms(v) -> dict:
    if isinstance(v, Polynomial):
        return {(0, m): c for m, c in v.items()}
    if isinstance(v, VectorPoly):
        return v.terms_dict
    return v


def buchberger(gens: Sequence[VectorPoly | Polynomial], order: MonomialOrder | None = None,
               relations: Sequence[VectorPoly | Polynomial] = (), ring: PolyRing | None = None,
               rank: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``span(gens) + span(relations)``.

    ``relations`` carries the ambient quotient (for ``R = S/J``, the vectors
    ``g * e_i`` with ``g`` running over a basis of ``J``).
    """
    allv = list(gens) + list(relations)
    if ring is None:
        if not allv:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = allv[0].ring
    if rank is None:
        rank = allv[0].rank if allv and isinstance(allv[0], VectorPoly) else 1
    if order is None:
        order = mon.degrevlex(ring.nvars)
    elements = buchberger_terms([_as_terms(v) for v in allv], order, ring.field)
    gv = [v if isinstance(v, VectorPoly) else VectorPoly(ring, 1, _as_terms(v)) for v in gens]
    rv = [v if isinstance(v, VectorPoly) else VectorPoly(ring, 1, _as_terms(v)) for v in relations]
    return GroebnerBasis(ring, rank, order, elements, gv, rv)


def normal_form(v, gb: GroebnerBasis):
    return gb.reduce(v)


def tagged_kernel(ring: PolyRing, p_rank: int, p_shifts: Sequence[int],
                  pairs: Sequence[tuple[dict, dict]], q_rank: int, q_shifts: Sequence[int],
                  zero_rels: Sequence[dict] = (), elim: int = 0,
                  weights: Sequence[int] = ()) -> list[dict]:
    """Generators of ``{sum a_i q_i : sum a_i p_i in span(zero_rels)}``.

    Works in ``S^(p_rank + q_rank)`` on the vectors ``(p_i, q_i)`` and
    ``(z, 0)`` with an order in which the ``p`` block dominates; basis
    elements living purely in the ``q`` block generate the answer.  With
    ``elim`` > 0 the first ``elim`` variables are also eliminated.
    """
    order = MonomialOrder(ring.nvars, "degrevlex", elim=elim, shifts=tuple(p_shifts) + tuple(q_shifts),
                          weights=tuple(weights), split=p_rank)
    vecs = []
    for p, q in pairs:
        v = dict(p)
        for (c, m), a in q.items():
            v[(c + p_rank, m)] = a
        vecs.append(v)
    vecs.extend(dict(z) for z in zero_rels)
    basis = buchberger_terms(vecs, order, ring.field, product_criterion=False)
    keyfn = order.keyfn
    out = []
    for f in basis:
        lt = max(f, key=keyfn)
        if lt[0] < p_rank:
            continue
        if elim and any(any(m[:elim]) for _, m in f):
            continue
        out.append({(c - p_rank, m): a for (c, m), a in f.items()})
    return out


def syzygies(gens: Sequence[VectorPoly], shifts: Sequence[int] = (), relations: Sequence[VectorPoly] = ()) -> list[VectorPoly]:
    """Generators of ``{a : sum a_i g_i in span(relations)}`` in ``S^len(gens)``.

    Each generator ``g_j`` is tracked through the basis computation by a tag
    vector ``e_j`` of degree ``deg g_j``.
    """
    gens = list(gens)
    if not gens:
        return []
    ring = gens[0].ring
    r = gens[0].rank
    shifts = tuple(shifts) if shifts else (0,) * r
    q_shifts = []
    pairs = []
    for j, g in enumerate(gens):
        if g:
            q_shifts.append(g.degree(shifts) if g.is_homogeneous(shifts) else 0)
        else:
            q_shifts.append(0)
        pairs.append((g.terms_dict, {(j, mon.one(ring.nvars)): ring.field.one}))
    out = tagged_kernel(ring, r, shifts, pairs, len(gens), q_shifts, [z.terms_dict for z in relations])
    return [VectorPoly(ring, len(gens), f) for f in out]


def eliminate(polys: Sequence[Polynomial], drop: Iterable[int]) -> GroebnerBasis:
    """Basis of ``(polys) ∩ k[remaining variables]`` (elements still use the full variable layout)."""
    polys = list(polys)
    ring = polys[0].ring
    n = ring.nvars
    drop = sorted(set(drop))
    keep = [i for i in range(n) if i not in drop]
    perm = drop + keep

    def permute(m):
        return tuple(m[i] for i in perm)

    def unpermute(m):
        out = [0] * n
        for pos, i in enumerate(perm):
            out[i] = m[pos]
        return tuple(out)

    order = mon.elimination(n, len(drop))
    gens = [{(0, permute(m)): c for m, c in p.items()} for p in polys if p]
    basis = buchberger_terms(gens, order, ring.field)
    k = len(drop)
    kept = [f for f in basis if not any(any(m[:k]) for _, m in f)]
    elements = [{(0, unpermute(m)): c for (_, m), c in f.items()} for f in kept]
    sub_order = mon.degrevlex(n)
    elements = buchberger_terms(elements, sub_order, ring.field)
    return GroebnerBasis(ring, 1, sub_order, elements)
