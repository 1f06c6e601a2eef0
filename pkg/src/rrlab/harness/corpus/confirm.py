"""Independent confirmations of corpus values, by degreewise linear algebra only.

None of these functions touch a Groebner basis; golden values are written
only after the matching confirmation succeeds.
"""

from __future__ import annotations

from ...modcalc import DegreewiseOracle, Submodule, oracle_eval


def hilbert_series(N: Submodule, D: int) -> list[int]:
    """``dim_k`` of the image of ``N`` in ``F/U`` in degrees ``0..D``."""
    orc = DegreewiseOracle(N.ambient)
    return [len(orc.piece(N.gens, d)) - len(orc.relations(d)) for d in range(D + 1)]


def series_quotient(a: list[int], b: list[int]) -> list[int]:
    """Power series ``a / b`` truncated to ``len(a)`` terms; ``b[0]`` must be 1."""
    if b[0] != 1:
        raise ValueError("divisor must start with 1")
    q = []
    for d in range(len(a)):
        q.append(a[d] - sum(q[i] * b[d - i] for i in range(d) if d - i < len(b)))
    return q


def confirm_pd(N: Submodule, verdict: str, betti: list, D: int = 12, window: int = 4) -> tuple[bool, str]:
    """Compare a projective-dimension verdict with ``H_N / H_R``.

    A finite resolution makes the quotient a polynomial whose coefficients
    are the alternating sums of the graded Betti numbers.  For an infinite
    verdict the quotient must keep nonzero coefficients up to ``D``, which
    rules out every finite resolution with shifts at most ``D - 1``.
    """
    R = N.ring
    HR = hilbert_series(R.unit_ideal(), D)
    HN = hilbert_series(N, D)
    q = series_quotient(HN, HR)
    if verdict == "finite":
        alt = [0] * (D + 1)
        for i, j, b in betti:
            if 0 <= j <= D:
                alt[j] += (-1) ** i * b
        ok = alt == q
        return ok, "H_N/H_R equals the alternating Betti sums through degree %d" % D
    ok = any(q[-window:])
    return ok, "H_N/H_R has a nonzero coefficient in degrees %d..%d" % (D - window + 1, D)


def confirm_rho(M: Submodule, rho: int, reg: int, D: int = 12) -> tuple[bool, str]:
    """The bounded chain must show ``closure != power`` at ``rho - 1`` and no excess on ``[rho, reg + 1]``.

    The chain only ever finds elements of the true closure, so an excess at
    ``rho - 1`` is exact; agreement above ``rho`` is checked where the chain
    has settled.
    """
    orc = DegreewiseOracle(M.ambient)
    gens = list(M.gens)

    def excess(n: int) -> tuple[bool, bool]:
        o = oracle_eval({"kind": "ratliff_rush", "M": M, "n": n}, D)
        growing = set(o.value["growing"])
        bigger = any(len(sp) > len(orc.piece(gens, d, min_mult=n)) for d, sp in o.spaces.items())
        settled_equal = all(len(sp) == len(orc.piece(gens, d, min_mult=n))
                            for d, sp in o.spaces.items() if d not in growing)
        return bigger, settled_equal

    if rho > 0 and rho - 1 >= 1:
        if not excess(rho - 1)[0]:
            return False, f"no excess found at n = {rho - 1}"
    for n in range(max(rho, 1), reg + 2):
        bigger, eq = excess(n)
        if bigger or not eq:
            return False, f"closure exceeds the power at n = {n}"
    return True, f"bounded Ratliff-Rush chain (degree <= {D}): excess at n = rho - 1, none on [rho, reg + 1]"


def confirm_socle_dims(M: Submodule, closures: list[Submodule], ls: list, D: int = 12) -> tuple[bool, str]:
    """``l_n = dim_k (N_n :_M m)/N_n`` summed over degrees ``<= D``."""
    R = M.ring
    orc = DegreewiseOracle(M.ambient)
    for N, l in zip(closures, ls):
        if l is None:
            continue
        o = oracle_eval({"kind": "colon_ideal", "N": N, "I": R.maximal_ideal, "M": M}, D)
        total = sum(len(sp) - len(orc.piece(N.gens, d)) for d, sp in o.spaces.items())
        if total != l:
            return False, f"socle dimension {total} != {l}"
    return True, f"socle dimensions by degreewise colon (degree <= {D})"


def _alt_sums_match(N: Submodule, betti: list, upto: int, D: int = 12) -> bool:
    R = N.ring
    q = series_quotient(hilbert_series(N, D), hilbert_series(R.unit_ideal(), D))
    alt = [0] * (D + 1)
    for i, j, b in betti:
        if 0 <= j <= D:
            alt[j] += (-1) ** i * b
    return alt[:upto + 1] == q[:upto + 1]


def confirm_record(session, record) -> tuple[str, dict] | None:
    """``(provenance, summary subset)`` for a record whose value was confirmed, else ``None``.

    ``session`` is the :class:`Session` that produced ``record``.
    """
    from ...filtration import FilteredModule
    from ...homology import projdim, quotient_module

    kind = record.command.split()[0]
    args = [a for a in record.command.split()[1:] if not a.startswith("--")]
    mods = session.modules
    s = record.summary
    if kind == "rho":
        M = mods[args[0]]
        ok, note = confirm_rho(M, s["rho"], s["reg"])
        return (f"oracle: {note}", {"rho": s["rho"]}) if ok else None
    if kind == "closures":
        Mf = session.filt(args[0])
        rho_ok, note1 = confirm_rho(Mf.module, s["rho"], record.value["reg"])
        B = record.value["reg"]
        from ...filtration import rho as rho_fn
        rep = rho_fn(Mf, session.config.seed)
        closures = [rep.closure(n) for n in range(B + 1)] + [Mf.power(B + 1)]
        ok, note2 = confirm_socle_dims(Mf.module, closures, s["l"])
        if rho_ok and ok:
            return f"oracle: {note1}; {note2}", {"rho": s["rho"], "l": s["l"]}
        return None
    if kind == "projdim":
        N = mods[args[0]]
        ok, note = confirm_pd(N, s["pd"], record.value["certificate"]["betti"])
        return (f"oracle: {note}", {"pd": s["pd"], "dim": s["dim"]}) if ok else None
    if kind == "resolve":
        N = mods[args[0]]
        betti = record.value["betti"]
        if _alt_sums_match(N, betti["betti"], betti["length"]):
            return ("oracle: alternating graded Betti sums equal H_N/H_R up to the computed length",
                    {"ranks": s["ranks"], "complete": s["complete"], "pd": s["pd"]})
        return None
    if kind == "reg":
        R = mods[args[0]].ring
        M = mods[args[0]]
        if M.is_whole() and M.rank == 1 and len(R.ideal_gens) <= 1:
            f = R.ideal_gens[0].degree() if R.ideal_gens else 1
            expect = f - 1 if R.ideal_gens else 0
            if expect == s["reg"]:
                return ("hand: G(S/(f)) = P/(f*) is resolved by 0 -> P(-deg f) -> P, G(S) = P",
                        {"reg": s["reg"]})
        return None
    if kind == "depth":
        M = mods[args[0]]
        R = M.ring
        if M.is_whole() and M.rank == 1 and M.ambient.is_free and len(R.ideal_gens) <= 1:
            if s["depth"] == R.krull_dim:
                return "hand: polynomial rings and hypersurfaces are Cohen-Macaulay", {"depth": s["depth"]}
        return None
    if kind == "verify":
        Mf = session.filt(args[0])
        R = Mf.ring
        start, n_max = record.value["n_range"]
        for n in range(start, n_max + 1):
            N = Mf.power(n)
            r = projdim(N)
            if r.value != s["pd_powers"][str(n)] or not confirm_pd(N, r.value, r.certificate["betti"])[0]:
                return None
            if str(n) in s["pd_quotients"]:
                Q = quotient_module(R.m_power(n))
                rq = projdim(Q)
                if rq.value != s["pd_quotients"][str(n)] or not confirm_pd(Q, rq.value,
                                                                           rq.certificate["betti"])[0]:
                    return None
        return ("oracle: every projective-dimension verdict matched against H_N/H_R "
                "(alternating Betti sums, or a nonzero coefficient in degrees 9..12)",
                {"regular": s["regular"], "pd_powers": s["pd_powers"], "pd_quotients": s["pd_quotients"]})
    if kind == "split":
        N, M = mods[args[0]], mods[args[2]]
        ok, note = confirm_socle_dims(M, [N], [s["l"]])
        return (f"oracle: {note}", {"l": s["l"]}) if ok else None
    if kind == "mfull" and s.get("m_full"):
        if record.checks.get("oracle_colon_inside"):
            return "oracle: (mN :_M x) recomputed degreewise lies in N", {"m_full": True}
    return None
