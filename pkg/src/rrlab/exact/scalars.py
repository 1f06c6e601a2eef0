"""Exact coefficient fields: the rationals and prime fields."""

from __future__ import annotations

import random
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

DEFAULT_PRIME = 32003


class Field:
    """Base class for coefficient fields.

    Elements are plain Python-level numbers (``mpq`` for the rationals,
    ``int`` in ``[0, p)`` for prime fields) so that polynomial code can use
    ordinary operators and only call :meth:`reduce` after each operation.
    """

    characteristic = 0
    name = "?"

    def __call__(self, value):
        raise NotImplementedError

    def reduce(self, a):
        return a

    def inv(self, a):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_infinite(self) -> bool:
        return self.characteristic == 0

    def random_element(self, rng: random.Random, lo: int = -10, hi: int = 10):
        return self(rng.randint(lo, hi))

    def to_json(self, a):
        return str(a)

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, value):
        if isinstance(value, str):
            return mpq(Fraction(value))
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_json(self, a):
        a = mpq(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


class PrimeField(Field):
    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not a prime")
        self.characteristic = int(p)
        self.name = f"GF({p})"

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, (Fraction, type(mpq()))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return num * pow(den, -1, p) % p
        if isinstance(value, str):
            return self(Fraction(value))
        return int(value) % p

    def reduce(self, a):
        return a % self.characteristic

    def inv(self, a):
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.characteristic)

    def to_json(self, a):
        return str(int(a))


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse ``q`` or ``fp:<prime>`` (the CLI spelling)."""
    s = spec.strip().lower()
    if s in ("q", "qq"):
        return QQ
    if s.startswith("fp"):
        rest = s[2:].lstrip(":<(").rstrip(">)")
        return GF(int(rest) if rest else DEFAULT_PRIME)
    raise ValueError(f"unknown field {spec!r}; expected 'q' or 'fp:<prime>'")
