"""Graded rings, submodules of free modules, and the operations on them."""

from .linalg import Echelon
from .oracle import DEFAULT_DEGREE_BOUND, DegreewiseOracle, OracleResult, oracle_eval
from .ring import Ambient, GradedRing, InhomogeneousError, monomial_ideal_dim
from .submodule import (FiniteLengthModule, NotFiniteLengthError, Submodule, annihilator, colon_elem,
                        colon_ideal, intersect, is_locally_zero, kdim, min_gens, mult_ideal)

__all__ = [
    "Echelon", "DEFAULT_DEGREE_BOUND", "DegreewiseOracle", "OracleResult", "oracle_eval", "Ambient", "GradedRing", "InhomogeneousError", "monomial_ideal_dim",
    "FiniteLengthModule", "NotFiniteLengthError", "Submodule", "annihilator", "colon_elem",
    "colon_ideal", "intersect", "is_locally_zero", "kdim", "min_gens", "mult_ideal",
]
