"""Bounded Ext-vanishing evidence for finite G-dimension.

Total reflexivity of a module cannot be decided from finitely many Ext
groups, so a clean result here is only evidence.  A non-vanishing Ext group
of a high syzygy, or a failed biduality map, is an exact negative verdict.
"""

from __future__ import annotations

from ..groebner import VectorPoly
from ..modcalc.submodule import Submodule
from .invariants import HdimReport
from .resolution import FreeMap, Resolution


def cohomology_vanishes(into: FreeMap | None, out: FreeMap) -> bool:
    """Whether ``ker(out) ⊆ im(into)`` for maps of free modules meeting at ``out``'s source."""
    K = out.kernel()
    if into is None:
        return K.is_zero()
    return K.is_contained_in(Submodule(K.ambient, into.columns))


def syzygy_module(res: Resolution, t: int) -> Submodule:
    """The ``t``-th syzygy module ``im(F_t -> F_(t-1))`` (``t = 0`` gives the module)."""
    if t == 0:
        return res.module
    f = res.maps[t] if t < len(res.maps) else None
    if f is None:
        return res.maps[t - 1].source().zero()
    return f.image()


def ext_vanishing(N: Submodule, bound: int, stop_early: bool = True) -> dict[int, bool]:
    """``{i: Ext^i(N, R) == 0}`` for ``1 <= i <= bound`` via the dualized minimal resolution."""
    res = Resolution(N).extend_to(bound + 1)
    out = {}
    for i in range(1, bound + 1):
        if i > res.length:
            out[i] = True  # F_i = 0 beyond a finished resolution
            continue
        d_i = res.maps[i]
        into = d_i.transpose()
        outmap = res.maps[i + 1].transpose() if i + 1 <= res.length else _zero_map(d_i)
        out[i] = cohomology_vanishes(into, outmap)
        if stop_early and not out[i]:
            break
    return out


def _zero_map(d: FreeMap) -> FreeMap:
    """The zero map out of the dual of ``d``'s source."""
    R = d.ring
    shifts = tuple(-s for s in d.src_shifts)
    T = R.free(1, (0,))
    return FreeMap(T, shifts, [VectorPoly(R.S, 1, {}) for _ in shifts])


def dual_module(N: Submodule) -> Submodule:
    """``N* = Hom(N, R)`` as the kernel of ``d_1^T`` inside ``F_0*``."""
    res = Resolution(N).extend_to(1)
    if res.length < 1:
        # N is free: N* is the dual free module
        shifts = tuple(-s for s in res.maps[0].src_shifts)
        return N.ring.free(len(shifts), shifts).whole()
    return res.maps[1].transpose().kernel()


def biduality_iso(N: Submodule) -> bool:
    """Whether ``N -> N**`` is an isomorphism.

    With ``N = coker(d_1)`` and ``G`` a generating map of ``N*``, the map is
    injective iff ``ker(G^T) ⊆ im(d_1)`` and surjective iff ``ker(Q^T) ⊆ im(G^T)``,
    where ``Q`` generates the syzygies of ``G``.
    """
    res = Resolution(N).extend_to(1)
    if res.length < 1:
        return True
    d1 = res.maps[1]
    Nstar = d1.transpose().kernel()
    gens = Nstar.trim().gens
    if not gens:
        # N* = 0: N** = 0, iso only when N = 0
        return N.is_zero()
    G = FreeMap(Nstar.ambient, tuple(g.degree(Nstar.shifts) for g in gens), list(gens))
    GT = G.transpose()
    if not cohomology_vanishes(d1, GT):
        return False
    K = G.kernel()
    qgens = K.trim().gens
    if not qgens:
        return cohomology_vanishes(GT, _zero_map(G))
    Q = FreeMap(G.source(), tuple(q.degree(K.shifts) for q in qgens), list(qgens))
    return cohomology_vanishes(GT, Q.transpose())


def gdim_evidence(N: Submodule, bound: int | None = None) -> HdimReport:
    """Ext-vanishing evidence for ``G-dim N < infinity`` up to ``bound``."""
    R = N.ring
    if bound is None:
        bound = 2 * R.nvars + 2
    if bound < 1:
        raise ValueError("evidence bound must be at least 1")
    t = R.depth
    res = Resolution(N).extend_to(t)
    cert = {"bound": bound, "syzygy_index": t}
    if t > res.length or syzygy_module(res, t).is_zero():
        cert["reason"] = "syzygy is zero or free"
        return HdimReport("G-evidence", "evidence", None, dict(cert, all_vanish=True, biduality=True))
    Nt = syzygy_module(res, t)
    ext = ext_vanishing(Nt, bound)
    cert["ext_syzygy"] = {str(i): v for i, v in ext.items()}
    if not all(ext.values()):
        first = min(i for i, v in ext.items() if not v)
        cert["reason"] = f"Ext^{first}(N_t, R) != 0"
        return HdimReport("G-evidence", "infinite", None, cert)
    Ns = dual_module(Nt)
    if not Ns.is_zero():
        ext_dual = ext_vanishing(Ns, bound)
    else:
        ext_dual = {i: True for i in range(1, bound + 1)}
    cert["ext_dual"] = {str(i): v for i, v in ext_dual.items()}
    if not all(ext_dual.values()):
        first = min(i for i, v in ext_dual.items() if not v)
        cert["reason"] = f"Ext^{first}(N_t*, R) != 0"
        return HdimReport("G-evidence", "infinite", None, cert)
    bid = biduality_iso(Nt)
    cert["biduality"] = bid
    if not bid:
        cert["reason"] = "N_t -> N_t** is not an isomorphism"
        return HdimReport("G-evidence", "infinite", None, cert)
    cert["all_vanish"] = True
    cert["reason"] = f"consistent with finite G-dimension up to bound {bound}"
    return HdimReport("G-evidence", "evidence", None, cert)
