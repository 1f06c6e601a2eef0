"""Free resolutions, Betti tables, depth, projective dimension and G-dimension evidence."""

from .gdim import biduality_iso, dual_module, ext_vanishing, gdim_evidence
from .invariants import HdimReport, betti_table, depth, pd_over_polynomial_ring, projdim, regularity_of
from .resolution import (BettiTable, FreeMap, Resolution, ResolutionError, free_module, over_polynomial_ring,
                         quotient_module, resolve)

__all__ = [
    "biduality_iso", "dual_module", "ext_vanishing", "gdim_evidence",
    "HdimReport", "betti_table", "depth", "pd_over_polynomial_ring", "projdim", "regularity_of",
    "BettiTable", "FreeMap", "Resolution", "ResolutionError", "free_module", "over_polynomial_ring",
    "quotient_module", "resolve",
]
