"""Exact scalars, monomials and sparse polynomials."""

from .monomials import Cmp, Monomial, MonomialOrder, degrevlex, elimination, lex
from .polynomial import ExprParser, ParseError, PolyRing, Polynomial
from .scalars import DEFAULT_PRIME, GF, QQ, Field, PrimeField, RationalField, field_from_spec

__all__ = [
    "Cmp", "Monomial", "MonomialOrder", "degrevlex", "elimination", "lex",
    "ExprParser", "ParseError", "PolyRing", "Polynomial",
    "DEFAULT_PRIME", "GF", "QQ", "Field", "PrimeField", "RationalField", "field_from_spec",
]
