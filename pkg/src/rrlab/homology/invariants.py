"""Depth, projective dimension and regularity read off free resolutions."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..modcalc.submodule import Submodule
from .resolution import BettiTable, Resolution, over_polynomial_ring, resolve


@dataclass
class HdimReport:
    """A homological-dimension verdict with the data behind it.

    ``label`` is ``Reg`` (projective dimension, exact) or ``G-evidence``.
    ``value`` is ``finite``, ``infinite`` or ``evidence``; ``dim`` is the
    finite dimension when known.
    """

    label: str
    value: str
    dim: int | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return self.value == "finite"

    def to_json(self) -> dict:
        return {"label": self.label, "value": self.value, "dim": self.dim, "certificate": self.certificate}


def pd_over_polynomial_ring(N: Submodule) -> int:
    res = resolve(over_polynomial_ring(N))
    return res.pd


def depth(N: Submodule) -> int:
    """``depth N = dim S - pd_S N`` (Auslander-Buchsbaum over the polynomial ring)."""
    if N.is_zero():
        raise ValueError("depth of the zero module is undefined")
    return N.ring.nvars - pd_over_polynomial_ring(N)


def projdim(N: Submodule, extra: int = 0) -> HdimReport:
    """Projective dimension over ``R``, decided exactly.

    A finite projective dimension equals ``depth R - depth N <= depth R``, so
    a minimal resolution that still has ``F_(depth R + 1) != 0`` proves it is
    infinite.  ``extra`` lengthens the computed resolution (for stability checks).
    """
    R = N.ring
    dR = R.depth
    cutoff = dR + 1
    res = resolve(N, cutoff + extra)
    res.check()
    betti = res.betti()
    cert = {"depth_R": dR, "cutoff": cutoff, "computed_length": res.length,
            "ranks": betti.ranks(), "betti": betti.to_json()["betti"]}
    if res.complete and res.pd <= dR:
        return HdimReport("Reg", "finite", res.pd, cert)
    if res.complete:
        # cannot happen for a correct resolution; kept as an explicit invariant breach
        raise AssertionError(f"finite resolution of length {res.pd} exceeds depth R = {dR}")
    cert["surviving_rank"] = res.rank(cutoff)
    return HdimReport("Reg", "infinite", None, cert)


def regularity_of(N: Submodule) -> int:
    """``max(j - i)`` over the Betti table of ``N`` over a polynomial ring."""
    if not N.ring.is_polynomial_ring:
        raise ValueError("regularity is read off a resolution over a polynomial ring")
    return resolve(N).betti().reg


def betti_table(N: Submodule, length: int | None = None) -> BettiTable:
    return resolve(N, length).betti()
