"""Monomials as exponent tuples, and monomial/module term orders.

A monomial is a plain ``tuple`` of nonnegative exponents.  A module term is a
pair ``(component, monomial)``; polynomials are the rank-one case with
component ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations_with_replacement
from typing import Callable, Iterator, Sequence

Monomial = tuple


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def one(nvars: int) -> Monomial:
    return (0,) * nvars


def degree(m: Monomial) -> int:
    return sum(m)


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


def divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def quotient(b: Monomial, a: Monomial) -> Monomial:
    """``b / a``; caller guarantees divisibility."""
    return tuple([y - x for x, y in zip(a, b)])


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def variable(i: int, nvars: int) -> Monomial:
    e = [0] * nvars
    e[i] = 1
    return tuple(e)


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All monomials of total degree ``d``, in decreasing lex order."""
    if d < 0:
        return
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def count_monomials(nvars: int, d: int) -> int:
    from math import comb

    if d < 0:
        return 0
    return comb(d + nvars - 1, nvars - 1) if nvars else int(d == 0)


_KINDS = ("degrevlex", "lex")


@dataclass(frozen=True)
class MonomialOrder:
    """A term order on ``(component, monomial)`` pairs.

    ``kind`` is ``degrevlex`` or ``lex``.  ``elim`` > 0 makes it a block
    order that eliminates the first ``elim`` variables.  ``position`` is
    ``"top"`` (term over position) or ``"pot"``.  ``shifts`` are the degrees
    of the free-module basis vectors, ``weights`` optional variable weights.
    ``split`` > 0 makes every term in a component below ``split`` larger
    than every term in a component at or above it (the tag-block trick used
    for syzygies, colons and intersections).
    """

    nvars: int
    kind: str = "degrevlex"
    elim: int = 0
    position: str = "top"
    shifts: tuple = ()
    weights: tuple = ()
    split: int = 0
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _keyfn: Callable = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.position not in ("top", "pot"):
            raise ValueError(f"unknown position {self.position!r}")
        if not 0 <= self.elim <= self.nvars:
            raise ValueError("elimination block larger than variable count")
        if self.weights and (len(self.weights) != self.nvars or min(self.weights) <= 0):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "_keyfn", self._build())

    def _build(self):
        shifts = self.shifts
        weights = self.weights
        k = self.elim
        split = self.split
        lex = self.kind == "lex"
        pot = self.position == "pot"

        if weights:
            def deg(m):
                return sum([w * e for w, e in zip(weights, m)])
        else:
            deg = sum

        def shift(c):
            return shifts[c] if c < len(shifts) else 0

        def key(term):
            c, m = term
            parts = []
            if split:
                parts.append(1 if c < split else 0)
            if pot:
                parts.append(-c)
            if k:
                head = m[:k]
                parts.append(sum(head))
                parts.append(tuple([-e for e in head[::-1]]))
            if lex:
                parts.append(m)
            else:
                parts.append(deg(m) + shift(c))
                parts.append(tuple([-e for e in m[::-1]]))
            if not pot:
                parts.append(-c)
            return tuple(parts)

        cache = self._cache

        def cached(term):
            try:
                return cache[term]
            except KeyError:
                v = cache[term] = key(term)
                return v

        return cached

    def key(self, term) -> tuple:
        """Sort key of a module term; larger key means larger term."""
        return self._keyfn(term)

    @property
    def keyfn(self) -> Callable:
        return self._keyfn

    def compare(self, a: Monomial, b: Monomial) -> Cmp:
        if len(a) != self.nvars or len(b) != self.nvars:
            raise ValueError("monomial length does not match the order's variable count")
        ka, kb = self._keyfn((0, tuple(a))), self._keyfn((0, tuple(b)))
        return Cmp.GT if ka > kb else Cmp.LT if ka < kb else Cmp.EQ

    def term_degree(self, term) -> int:
        c, m = term
        d = sum([w * e for w, e in zip(self.weights, m)]) if self.weights else sum(m)
        return d + (self.shifts[c] if c < len(self.shifts) else 0)

    def with_shifts(self, shifts: Sequence[int]) -> "MonomialOrder":
        return MonomialOrder(self.nvars, self.kind, self.elim, self.position,
                             tuple(shifts), self.weights, self.split)


def degrevlex(nvars: int, shifts: Sequence[int] = ()) -> MonomialOrder:
    return MonomialOrder(nvars, "degrevlex", shifts=tuple(shifts))


def lex(nvars: int) -> MonomialOrder:
    return MonomialOrder(nvars, "lex")


def elimination(nvars: int, k: int, shifts: Sequence[int] = (), weights: Sequence[int] = ()) -> MonomialOrder:
    return MonomialOrder(nvars, "degrevlex", elim=k, shifts=tuple(shifts), weights=tuple(weights))
