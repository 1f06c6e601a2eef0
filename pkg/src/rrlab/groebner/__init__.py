"""Groebner bases, normal forms, syzygies and elimination for free modules."""

from .engine import (GroebnerBasis, GroebnerError, STATS, buchberger, buchberger_terms, check_terms,
                     eliminate, normal_form, reduce_terms, syzygies, tagged_kernel)
from .vectors import VectorPoly, add_terms, combine, poly_times_terms

__all__ = [
    "GroebnerBasis", "GroebnerError", "STATS", "buchberger", "buchberger_terms", "check_terms",
    "eliminate", "normal_form", "reduce_terms", "syzygies", "tagged_kernel",
    "VectorPoly", "add_terms", "combine", "poly_times_terms",
]
