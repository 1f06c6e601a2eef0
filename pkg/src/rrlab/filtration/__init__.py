"""The m-adic filtration: powers, Ratliff-Rush closures, rho, superficial elements, m-fullness."""

from .filtered import (DEFAULT_ATTEMPTS, DepthZeroError, FilteredModule, MFullResult, NoSuperficialElement,
                       RREntry, RRReport, SuperficialWitness, depth_G_positive, find_superficial, is_m_full,
                       is_superficial, m_full_colon, random_linear_form, ratliff_rush, ratliff_rush_chain, rho)
from .graded import AssocGraded, InvariantBreach, assoc_graded, rees_presentation, strata_hilbert
from .split import MFullSplitReport, NotMFullWitness, mfull_split


def power(Mf: FilteredModule, n: int):
    return Mf.power(n)


__all__ = [
    "DEFAULT_ATTEMPTS", "DepthZeroError", "FilteredModule", "MFullResult", "NoSuperficialElement",
    "RREntry", "RRReport", "SuperficialWitness", "depth_G_positive", "find_superficial", "is_m_full",
    "is_superficial", "m_full_colon", "random_linear_form", "ratliff_rush", "ratliff_rush_chain", "rho",
    "AssocGraded", "InvariantBreach", "assoc_graded", "rees_presentation", "strata_hilbert",
    "MFullSplitReport", "NotMFullWitness", "mfull_split", "power",
]
