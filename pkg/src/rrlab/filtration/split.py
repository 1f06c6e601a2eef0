"""The socle splitting of an m-full submodule.

For ``N ⊆ M`` with ``(m N :_M x) = N`` the socle quotient
``W = (N :_M m)/N`` embeds into ``N/xN`` by ``s -> x s``, and the map
``phi`` reading off the ``x p_i`` coordinates of a minimal basis splits it.
Everything is checked with explicit matrices over the residue field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..exact.polynomial import Polynomial
from ..groebner import VectorPoly, syzygies
from ..modcalc.linalg import Echelon, coordinates
from ..modcalc.oracle import DegreewiseOracle
from ..modcalc.submodule import FiniteLengthModule, Submodule, colon_elem, colon_ideal
from .filtered import m_full_colon


class NotMFullWitness(ValueError):
    pass


@dataclass
class MFullSplitReport:
    N: Submodule
    M: Submodule
    x: Polynomial
    socle: list            # p_1..p_l
    completion: list       # z_1..z_m
    psi: list              # rows indexed by a basis of N/xN in the relevant degrees, columns by p_i
    phi_bar: list          # rows indexed by p_i
    composite: list        # phi_bar * psi
    checks: dict = field(default_factory=dict)

    @property
    def l(self) -> int:
        return len(self.socle)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        f = self.N.ring.field
        mat = lambda A: [[f.to_json(a) for a in row] for row in A]
        return {
            "x": str(self.x),
            "l": self.l,
            "socle": [str(p) for p in self.socle],
            "x_socle": [str(p * self.x) for p in self.socle],
            "completion": [str(z) for z in self.completion],
            "psi": mat(self.psi),
            "phi_bar": mat(self.phi_bar),
            "composite": mat(self.composite),
            "summand_dim": self.l,
            "checks": self.checks,
        }


def _random_poly(S, rng: random.Random, max_deg: int = 1, terms: int = 3) -> Polynomial:
    from ..exact import monomials as mon

    out = S.zero
    for _ in range(terms):
        d = rng.randint(0, max_deg)
        ms = list(mon.monomials_of_degree(S.nvars, d))
        out = out + S.monomial(rng.choice(ms), S.field(rng.randint(-5, 5)))
    return out


class _MinimalBasis:
    """Coordinates of elements of ``N`` in ``N/mN`` against ``{x p_i} ∪ {z_j}``."""

    def __init__(self, N: Submodule, basis: list[VectorPoly]):
        self.field = N.ring.field
        self.mN_gb = (N * N.ring.maximal_ideal).gb
        self.basis = basis
        self.nf = [self.mN_gb.reduce_raw(b.terms_dict) for b in basis]
        self.degs = [b.degree(N.shifts) for b in basis]
        self.shifts = N.shifts

    def coords(self, v: VectorPoly) -> list:
        """Constant coordinates of the class of ``v`` in ``N/mN`` (``v`` need not be homogeneous)."""
        out = [self.field.zero] * len(self.basis)
        for d, part in v.homogeneous_components(self.shifts).items():
            idx = [i for i, e in enumerate(self.degs) if e == d]
            r = self.mN_gb.reduce_raw(part.terms_dict)
            if not r:
                continue
            c = coordinates(self.field, [self.nf[i] for i in idx], r)
            if c is None:
                raise ValueError("element is not in N")
            for i, a in zip(idx, c):
                out[i] = a
        return out


def mfull_split(N: Submodule, M: Submodule, x, spot_checks: int = 20, seed: int = 0) -> MFullSplitReport:
    """Build and verify ``W``, the minimal-basis completion, ``psi`` and ``phi_bar``."""
    R = N.ring
    S = R.S
    f = R.field
    x = S(x)
    checks: dict = {}
    if not m_full_colon(N, x, M) <= N:
        raise NotMFullWitness("x is not an m-full witness for N")
    m = R.maximal_ideal
    Nx = colon_elem(N, x, M)
    Nm = colon_ideal(N, m, M)
    checks["colon_x_equals_colon_m"] = Nx == Nm

    # basis of W = (N :_M m)/N: generators of N :_M m independent modulo N
    ngb = N.gb
    ech = Echelon(f)
    socle = []
    for g in Nm.trim().gens:
        if ech.add(ngb.reduce_raw(g.terms_dict)):
            socle.append(g)
    l = len(socle)
    checks["socle_dim_matches_kdim"] = l == FiniteLengthModule(Nm, N).kdim()

    # x p_i extend to a minimal basis of N
    mN_gb = (N * m).gb
    ech = Echelon(f)
    xp = [p * x for p in socle]
    checks["x_socle_independent_mod_mN"] = all(ech.add(mN_gb.reduce_raw(v.terms_dict)) for v in xp)
    completion = [g for g in N.trim().gens if ech.add(mN_gb.reduce_raw(g.terms_dict))]
    checks["minimal_basis_size"] = len(xp) + len(completion) == len(N.trim().gens)
    basis = xp + completion
    mb = _MinimalBasis(N, basis)

    def phi(v: VectorPoly) -> list:
        return mb.coords(v)[:l]

    # psi and phi_bar degreewise on N/xN, in the degrees of the x p_i
    orc = DegreewiseOracle(N.ambient)
    xN_gens = [g * x for g in N.gens]
    psi_cols = [[] for _ in range(l)]
    phi_cols = []
    for e in sorted({v.degree(N.shifts) for v in xp}):
        sub = orc.piece(xN_gens, e)
        qbasis = []
        qred = []
        work = Echelon(f)
        work.rows = {k: dict(r) for k, r in sub.rows.items()}
        for v in orc.piece(N.gens, e).basis():
            if work.add(v):
                qbasis.append(v)
                qred.append(sub.reduce(v))
        for i, v in enumerate(xp):
            if v.degree(N.shifts) == e:
                c = coordinates(f, qred, sub.reduce(v.terms_dict))
            else:
                c = [f.zero] * len(qbasis)
            psi_cols[i].extend(c)
        for b in qbasis:
            phi_cols.append(phi(VectorPoly(S, N.rank, b)))
    q = len(phi_cols)
    psi = [[psi_cols[j][i] for j in range(l)] for i in range(q)]
    phi_bar = [[phi_cols[i][r] for i in range(q)] for r in range(l)]
    comp = [[f.reduce(sum((phi_bar[r][i] * psi[i][j] for i in range(q)), f.zero)) for j in range(l)]
            for r in range(l)]
    checks["phi_bar_psi_identity"] = all(comp[r][j] == (f.one if r == j else f.zero)
                                         for r in range(l) for j in range(l))

    # well-definedness of phi: two representations of one element give one value
    rng = random.Random(seed)
    syz = syzygies(basis, N.shifts, [VectorPoly(S, N.rank, t) for t in N.ambient.base_relations]) if basis else []
    ok = True
    kills_xN = True
    for _ in range(spot_checks if basis else 0):
        coeffs = [_random_poly(S, rng) for _ in basis]
        t = _combine(basis, coeffs, S, N.rank)
        alt = list(coeffs)
        for s in syz:
            c = _random_poly(S, rng)
            comps = s.components()
            alt = [a + c * comps[i] for i, a in enumerate(alt)]
        t2 = _combine(basis, alt, S, N.rank)
        same = not N.ambient.relation_gb.reduce_raw((t - t2).terms_dict)
        v1 = [a.coefficient(_one(S)) for a in coeffs[:l]]
        v2 = [a.coefficient(_one(S)) for a in alt[:l]]
        diff = _combine(socle, [S.constant(f.reduce(a - b)) for a, b in zip(v1, v2)], S, N.rank) if l else None
        ok &= same and (diff is None or N.contains(diff)) and phi(t) == [f(a) for a in v1]
        kills_xN &= not any(phi(t * x))
    checks["phi_well_defined"] = ok
    checks["phi_kills_xN"] = kills_xN
    return MFullSplitReport(N, M, x, socle, completion, psi, phi_bar, comp, checks)


def _one(S):
    return (0,) * S.nvars


def _combine(vectors, coeffs, S, rank) -> VectorPoly:
    out = VectorPoly(S, rank, {})
    for v, c in zip(vectors, coeffs):
        if c:
            out = out + v * c
    return out
