"""The m-adic filtration of a module, its Ratliff-Rush closures and superficial elements."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property

from ..exact.polynomial import Polynomial
from ..homology import depth as module_depth
from ..homology import regularity_of
from ..modcalc.submodule import (FiniteLengthModule, Submodule, annihilator, colon_elem, colon_ideal,
                                 monomial_ideal_dim)
from .graded import AssocGraded, assoc_graded

log = logging.getLogger(__name__)

DEFAULT_ATTEMPTS = 16
MIN_PRIME = 1000
CHAIN_WINDOW = 2


class DepthZeroError(ValueError):
    def __init__(self, what: str = "Ratliff-Rush properties 1-3"):
        super().__init__(f"depth M = 0: {what} unavailable (a module of positive depth is required)")


class NoSuperficialElement(RuntimeError):
    def __init__(self, tried: list):
        self.tried = tried
        super().__init__(f"no superficial element among {len(tried)} tried forms: "
                         + ", ".join(str(f) for f in tried))


def random_linear_form(S, rng: random.Random, lo: int = -10, hi: int = 10) -> Polynomial:
    """A nonzero linear form with integer coefficients drawn uniformly from ``[lo, hi]``."""
    while True:
        coeffs = [rng.randint(lo, hi) for _ in range(S.nvars)]
        f = sum((S.field(c) * x for c, x in zip(coeffs, S.gens) if c), S.zero)
        if f:
            return f


@dataclass
class SuperficialWitness:
    """A linear form ``x`` whose initial form is filter-regular on ``G(M)``.

    ``annihilator_dim`` is ``dim_k (0 :_G(M) x*)``, finite by construction;
    the stabilization index ``c`` is not computed.
    """

    x: Polynomial
    annihilator_dim: int
    annihilator_gens: tuple
    c: int | None = None
    tried: tuple = ()

    def to_json(self) -> dict:
        return {"x": str(self.x), "certificate_dim": self.annihilator_dim,
                "certificate_gens": [str(g) for g in self.annihilator_gens],
                "c": self.c, "tried_before": [str(f) for f in self.tried]}


class FilteredModule:
    """A graded module ``M`` together with its filtration ``m^n M``."""

    def __init__(self, M: Submodule, name: str = "M", check_bound: int = 8):
        self.module = M
        self.name = name
        self.check_bound = check_bound
        self._powers: dict[int, Submodule] = {0: M}
        self._superficial: dict = {}

    @property
    def ring(self):
        return self.module.ring

    def power(self, n: int) -> Submodule:
        """``m^n M`` with trimmed generators."""
        if n < 0:
            raise ValueError("filtration index must be nonnegative")
        top = max(k for k in self._powers if k <= n)
        cur = self._powers[top]
        for k in range(top + 1, n + 1):
            cur = cur.power(1)
            self._powers[k] = cur
        return self._powers[n]

    @cached_property
    def depth(self) -> int:
        return module_depth(self.module)

    @cached_property
    def graded(self) -> AssocGraded:
        return assoc_graded(self.module, self.check_bound, self.power)

    @cached_property
    def reg(self) -> int:
        G = self.graded
        return regularity_of(G.module) if G.rank else 0

    @cached_property
    def graded_depth(self) -> int:
        """``depth G(M)`` over ``P``, by Auslander-Buchsbaum."""
        return module_depth(self.graded.module)

    def superficial(self, attempts: int = DEFAULT_ATTEMPTS, seed: int = 0) -> SuperficialWitness:
        key = (attempts, seed)
        if key not in self._superficial:
            self._superficial[key] = find_superficial(self, attempts, seed)
        return self._superficial[key]

    def ratliff_rush(self, n: int, mode: str = "certified", witness: SuperficialWitness | None = None,
                     seed: int = 0) -> Submodule:
        return ratliff_rush(self, n, mode, witness, seed)


# -- superficial elements ------------------------------------------------------

def filter_regular_certificate(G: AssocGraded, form) -> tuple[bool, Submodule]:
    """``(finite, Z)`` where ``Z = (0 :_G form)`` and ``finite`` says it has finite length."""
    A = G.ambient
    Z = colon_elem(A.zero(), form)
    if Z.is_zero():
        return True, Z
    ann = annihilator(Z, A.zero())
    return monomial_ideal_dim(ann.gb.leading_monomials(), A.ring.nvars) <= 0, Z


def is_superficial(Mf: FilteredModule, x: Polynomial) -> tuple[bool, int | None]:
    """Whether the linear form ``x`` is superficial for ``M`` (and ``dim_k (0 :_G x*)`` if so)."""
    G = Mf.graded
    ok, Z = filter_regular_certificate(G, G.initial_form(x))
    if not ok:
        return False, None
    return True, FiniteLengthModule(Z, G.ambient.zero()).kdim() if not Z.is_zero() else 0


def find_superficial(Mf: FilteredModule, attempts: int = DEFAULT_ATTEMPTS, seed: int = 0,
                     min_prime: int = MIN_PRIME) -> SuperficialWitness:
    """Try random linear forms until one is filter-regular on ``G(M)``."""
    R = Mf.ring
    p = R.field.characteristic
    if p and p <= min_prime:
        raise ValueError(f"field of order {p} is too small for random superficial elements "
                         f"(need p > {min_prime})")
    rng = random.Random(seed)
    G = Mf.graded
    tried = []
    for _ in range(attempts):
        x = random_linear_form(R.S, rng)
        ok, Z = filter_regular_certificate(G, G.initial_form(x))
        if ok:
            dim = FiniteLengthModule(Z, G.ambient.zero()).kdim() if not Z.is_zero() else 0
            gens = tuple(Z.trim().gens)
            return SuperficialWitness(x, dim, gens, None, tuple(tried))
        tried.append(x)
    raise NoSuperficialElement(tried)


# -- Ratliff-Rush closures -------------------------------------------------------

def ratliff_rush_chain(Mf: FilteredModule, n: int, window: int = CHAIN_WINDOW,
                       max_k: int = 24) -> tuple[Submodule, int]:
    """Follow ``T_k = (m^(n+k) M :_M m^k)`` until it is constant for ``window`` steps.

    Heuristic: a run of equal terms does not prove the chain has stopped.
    Returns the last term and the ``k`` at which it was taken.
    """
    M = Mf.module
    if n == 0:
        return M, 0
    R = Mf.ring
    prev = None
    run = 0
    for k in range(1, max_k + 1):
        T = colon_ideal(Mf.power(n + k), R.m_power(k), M)
        if prev is not None and T == prev:
            run += 1
            if run >= window:
                return T, k
        else:
            run = 0
        prev = T
    log.warning("Ratliff-Rush chain still moving at k = %d", max_k)
    return prev, max_k


def ratliff_rush(Mf: FilteredModule, n: int, mode: str = "certified",
                 witness: SuperficialWitness | None = None, seed: int = 0) -> Submodule:
    """The Ratliff-Rush closure of ``m^n M``.

    ``certified``: with ``B = reg G(M)`` (which bounds the index from which the
    closures agree with the powers) the answer is ``m^n M`` for ``n >= B`` and
    ``(m^B M :_M x^(B-n))`` for ``1 <= n < B``, where ``x`` is superficial.
    ``chain``: the heuristic stopping rule of :func:`ratliff_rush_chain`.
    """
    if n < 0:
        raise ValueError("filtration index must be nonnegative")
    if mode == "chain":
        return ratliff_rush_chain(Mf, n)[0]
    if mode != "certified":
        raise ValueError(f"unknown mode {mode!r}")
    if n == 0:
        return Mf.module
    if Mf.depth == 0:
        raise DepthZeroError()
    B = Mf.reg
    if n >= B:
        return Mf.power(n)
    x = (witness or Mf.superficial(seed=seed)).x
    return colon_elem(Mf.power(B), x ** (B - n), Mf.module)


@dataclass
class RREntry:
    n: int
    power: Submodule
    closure: Submodule
    equal: bool
    exponent: int | None

    def to_json(self) -> dict:
        return {"n": self.n, "power": [str(g) for g in self.power.gens],
                "closure": [str(g) for g in self.closure.gens], "equal": self.equal,
                "colon_exponent": self.exponent}


@dataclass
class RRReport:
    """Ratliff-Rush closures on ``[0, B]`` with ``B = reg G(M)``, and ``rho``."""

    bound: int
    entries: list
    rho: int
    mode: str
    witness: SuperficialWitness | None
    checks: dict = field(default_factory=dict)

    def closure(self, n: int) -> Submodule:
        if n > self.bound:
            raise IndexError("beyond the certified range; the closure equals the power there")
        return self.entries[n].closure

    def to_json(self) -> dict:
        return {"bound": self.bound, "rho": self.rho, "mode": self.mode,
                "witness": self.witness.to_json() if self.witness else None,
                "entries": [e.to_json() for e in self.entries], "checks": self.checks}


def chain_checks(Mf: FilteredModule, entries: list) -> dict:
    """The filtration shape: ``m^n M ⊆ closure_n``, ``m closure_n ⊆ closure_(n+1) ⊆ closure_n``."""
    m = Mf.ring.maximal_ideal
    out = {"power_inside": True, "m_times_inside_next": True, "decreasing": True}
    for i, e in enumerate(entries):
        out["power_inside"] &= e.power <= e.closure
        if i + 1 < len(entries):
            nxt = entries[i + 1].closure
            out["m_times_inside_next"] &= (e.closure * m) <= nxt
            out["decreasing"] &= nxt <= e.closure
    return out


def rho(Mf: FilteredModule, seed: int = 0, attempts: int = DEFAULT_ATTEMPTS) -> RRReport:
    """``rho(M)``: the least ``i`` with closure equal to power for all ``n >= i``.

    Equality is checked on ``[0, B]``; beyond ``B = reg G(M)`` it holds by the
    regularity bound.
    """
    if Mf.depth == 0:
        raise DepthZeroError()
    B = Mf.reg
    wit = Mf.superficial(attempts, seed)
    entries = []
    for n in range(B + 1):
        P = Mf.power(n)
        if n == 0 or n >= B:
            C, e = P, None
        else:
            C = ratliff_rush(Mf, n, "certified", wit)
            e = B - n
        entries.append(RREntry(n, P, C, P == C, e))
    r = 0
    for e in entries:
        if not e.equal:
            r = e.n + 1
    rep = RRReport(B, entries, r, "certified", wit)
    rep.checks = chain_checks(Mf, entries)
    if not all(rep.checks.values()):
        raise AssertionError(f"Ratliff-Rush chain shape violated: {rep.checks}")
    return rep


def depth_G_positive(Mf: FilteredModule, seed: int = 0) -> bool:
    """``depth G(M) > 0``, read off as ``rho(M) = 0``."""
    return rho(Mf, seed).rho == 0


# -- m-full submodules ---------------------------------------------------------

@dataclass
class MFullResult:
    """Outcome of :func:`is_m_full`; a negative answer is heuristic."""

    full: bool
    witness: Polynomial | None
    heuristic: bool
    tried: list = field(default_factory=list)

    def __bool__(self):
        return self.full

    def to_json(self) -> dict:
        return {"m_full": self.full, "witness": str(self.witness) if self.witness is not None else None,
                "label": "heuristic" if self.heuristic else "exact",
                "tried": [{"x": str(x), "colon": [str(g) for g in c]} for x, c in self.tried]}


def m_full_colon(N: Submodule, x, M: Submodule) -> Submodule:
    """``(m N :_M x)``."""
    mN = N * N.ring.maximal_ideal
    return colon_elem(mN, x, M)


def is_m_full(N: Submodule, M: Submodule, x=None, attempts: int = DEFAULT_ATTEMPTS, seed: int = 0,
              Mf: FilteredModule | None = None) -> MFullResult:
    """Whether ``(m N :_M x) = N`` for some ``x in m``.

    Witnesses are tried in order: the given ``x``; a superficial element of ``M``
    (when ``M`` has positive depth); then random linear forms.
    """
    R = N.ring
    if x is not None:
        x = R.S(x)
        C = m_full_colon(N, x, M)
        ok = C <= N
        return MFullResult(ok, x if ok else None, False, [] if ok else [(x, C.gens)])
    cands = []
    Mf = Mf or FilteredModule(M)
    try:
        if Mf.depth > 0:
            cands.append(Mf.superficial(attempts, seed).x)
    except Exception as exc:  # no witness from this route; fall back to random forms
        log.info("superficial witness unavailable: %s", exc)
    rng = random.Random(seed + 1)
    cands.extend(random_linear_form(R.S, rng) for _ in range(attempts))
    tried = []
    for c in cands:
        C = m_full_colon(N, c, M)
        if C <= N:
            return MFullResult(True, c, False, tried)
        tried.append((c, C.trim().gens))
    return MFullResult(False, None, True, tried)
