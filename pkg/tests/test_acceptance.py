"""The nine acceptance criteria, each run at its stated tolerance.

Every criterion prints one ``criterion N: PASS|FAIL`` line; the lines are
collected and repeated in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` to get only the nine lines.
"""

import json

import pytest

from rrlab.exact import QQ
from rrlab.filtration import (FilteredModule, depth_G_positive, is_m_full, mfull_split, ratliff_rush,
                              ratliff_rush_chain, rho)
from rrlab.groebner import STATS, engine
from rrlab.harness import RunConfig, Session, corpus_names, corpus_run, corpus_text, parse
from rrlab.harness.corpus.confirm import confirm_pd, confirm_rho, confirm_socle_dims
from rrlab.harness.theorem import verify_regularity_criterion
from rrlab.homology import betti_table, depth, projdim, quotient_module
from rrlab.modcalc import DegreewiseOracle, GradedRing, colon_elem

LINES: list[str] = []


def report_line(request, n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    LINES.append(line)
    if request is not None:
        lines = getattr(request.config, "_acceptance_lines", [])
        lines.append(line)
        request.config._acceptance_lines = lines


# -- shared inputs ---------------------------------------------------------------------

def ring(names, ideal=()):
    return GradedRing(QQ, names, ideal)


def modules():
    """Modules of positive depth used by criteria 2-5, with labels."""
    S2 = ring(["x", "y"])
    S3 = ring(["x", "y", "z"])
    DL = ring(["x", "y"], ["x^2"])
    NODE = ring(["x", "y"], ["x*y"])
    CUBIC = ring(["x", "y"], ["x^3 + y^3"])
    CONE = ring(["x", "y", "z"], ["x^2 - y*z"])
    x, y = S2.gens
    mono = lambda *es: S2.ideal([S2.S.monomial(e) for e in es])
    return {
        "S = Q[x,y]": S2.unit_ideal(),
        "R = Q[x,y]/(x^2)": DL.unit_ideal(),
        "Q[x,y]/(xy)": NODE.unit_ideal(),
        "Q[x,y]/(x^3+y^3)": CUBIC.unit_ideal(),
        "Q[x,y,z]/(x^2-yz)": CONE.unit_ideal(),
        "m of Q[x,y,z]": S3.maximal_ideal,
        "ideal (x^3,y^3,x^2y^2)": mono((3, 0), (0, 3), (2, 2)),
        "ideal (x^4,y^4,x^3y^3)": mono((4, 0), (0, 4), (3, 3)),
        "ideal (x^4,y^4,x^2y^3)": mono((4, 0), (0, 4), (2, 3)),
        "ideal (x^4,x^3y,xy^3,y^4)": mono((4, 0), (3, 1), (1, 3), (0, 4)),
    }


@pytest.fixture(scope="module")
def filtered():
    out = {}
    for label, M in modules().items():
        Mf = FilteredModule(M)
        assert Mf.depth > 0, label
        out[label] = (Mf, rho(Mf))
    return out


@pytest.fixture(scope="module")
def corpus_q():
    return corpus_run(RunConfig(field="q", seed=0, gb_check=True))


# -- criteria ------------------------------------------------------------------------------

def test_criterion_1_groebner_soundness(request, corpus_q):
    engine.SELF_CHECK = True
    before = dict(STATS)
    rep = corpus_q
    cross = [r for r in rep.records if r.command.startswith("crosscheck")]
    ops_ok = all(r.verdict == "pass" for r in cross)
    conclusive = all(op["conclusive"] and not op["mismatched_degrees"]
                     for r in cross for op in r.certificate["operations"].values())
    bound_ok = all(r.certificate["degree_bound"] == 12 for r in cross)
    g = rep.groebner
    corpus_gb = g["computed"] > 0 and g["verified"] == g["computed"]
    suite_gb = STATS["verified"] == STATS["computed"] and STATS["computed"] >= before["computed"]
    ok = ops_ok and conclusive and bound_ok and corpus_gb and suite_gb and len(cross) >= 10
    report_line(request, 1, ok,
                f"{g['verified']}/{g['computed']} corpus Groebner bases re-verified by S-pairs; "
                f"{5 * len(cross)} product/colon/intersection results on {len(cross)} corpus modules "
                f"equal the linear-algebra oracle through degree 12")
    assert ok


def test_criterion_2_closures_are_m_full(request, filtered):
    pairs = []
    failures = []
    for label, (Mf, rep) in filtered.items():
        x = rep.witness.x
        for n in range(0, rep.bound + 2):
            N = ratliff_rush(Mf, n)
            res = is_m_full(N, Mf.module, x)
            pairs.append((label, n))
            if not (res.full and res.witness == x and not res.heuristic):
                failures.append((label, n))
    labels = {l for l, _ in pairs}
    ideal_modules = {l for l in labels if l.startswith("ideal")}
    ok = (not failures and len(pairs) >= 6 and "S = Q[x,y]" in labels
          and "R = Q[x,y]/(x^2)" in labels and len(ideal_modules) >= 2)
    report_line(request, 2, ok, f"{len(pairs) - len(failures)}/{len(pairs)} pairs (M, n) over "
                f"{len(labels)} modules ({len(ideal_modules)} ideal-modules) m-full with the superficial witness")
    assert ok, failures


def test_criterion_3_socle_splitting(request, filtered):
    S2 = ring(["x", "y"])
    x = S2.gens[0]
    cases = [("m in Q[x,y]", S2.maximal_ideal, S2.unit_ideal(), x),
             ("m^2 in Q[x,y]", S2.m_power(2), S2.unit_ideal(), x)]
    for label, (Mf, rep) in filtered.items():
        for n in range(1, rep.bound + 2):
            cases.append((f"closure {n} of {label}", ratliff_rush(Mf, n), Mf.module, rep.witness.x))
    required = {"colon_x_equals_colon_m", "socle_dim_matches_kdim", "x_socle_independent_mod_mN",
                "minimal_basis_size", "phi_bar_psi_identity", "phi_well_defined", "phi_kills_xN"}
    bad = []
    nontrivial = 0
    for label, N, M, w in cases:
        r = mfull_split(N, M, w, spot_checks=20)
        identity = all(r.composite[i][j] == (1 if i == j else 0) for i in range(r.l) for j in range(r.l))
        socle_ok = confirm_socle_dims(M, [N], [r.l])[0]
        if not (required <= set(r.checks) and r.valid and identity and socle_ok):
            bad.append(label)
        nontrivial += r.l > 0
    ok = not bad and nontrivial >= 6
    report_line(request, 3, ok, f"{len(cases) - len(bad)}/{len(cases)} m-full pairs split "
                f"({nontrivial} with l > 0): colon by x = colon by m, minimal-basis extension, "
                f"20 spot checks of phi, phi_bar*psi = identity, l = socle length by the oracle")
    assert ok, bad


def test_criterion_4_ratliff_rush_properties(request, filtered):
    bad = []
    colon_checks = equal_checks = 0
    depth_instances = []
    for label, (Mf, rep) in filtered.items():
        M, x, B, r = Mf.module, rep.witness.x, rep.bound, rep.rho
        chain = {n: ratliff_rush_chain(Mf, n)[0] for n in range(1, B + 1)}
        # (3): downward colon by the superficial element, for certified and chain closures alike
        for n in range(1, B):
            colon_checks += 1
            if colon_elem(rep.closure(n + 1), x, M) != rep.closure(n):
                bad.append((label, "colon", n))
            if colon_elem(chain[n + 1], x, M) != chain[n] or chain[n] != rep.closure(n):
                bad.append((label, "chain colon", n))
        # (1): closures equal powers from rho on
        for n in range(max(r, 1), B + 1):
            equal_checks += 1
            if rep.closure(n) != Mf.power(n) or chain[n] != Mf.power(n):
                bad.append((label, "equal", n))
        if not confirm_rho(M, r, B)[0]:
            bad.append((label, "oracle rho"))
        # (2): depth G(M) > 0 iff rho = 0, against a homological depth of G(M) over P
        gd = depth(Mf.graded.module)
        depth_instances.append((label, r, gd))
        if depth_G_positive(Mf) != (gd > 0) or (r == 0) != (gd > 0):
            bad.append((label, "depth G"))
    with_positive_rho = sum(1 for _, r, _ in depth_instances if r > 0)
    ok = not bad and len(depth_instances) >= 3 and with_positive_rho >= 1
    report_line(request, 4, ok, f"{colon_checks} colon identities, {equal_checks} closure = power checks, "
                f"depth G(M) > 0 iff rho = 0 on {len(depth_instances)} modules "
                f"({with_positive_rho} with rho > 0)")
    assert ok, bad


def test_criterion_5_rho_bounded_by_reg(request, corpus_q, filtered):
    corpus = [r for r in corpus_q.records if r.command.startswith("rho ")]
    bound_ok = all(r.verdict == "pass" and r.summary["rho"] <= r.summary["reg"] for r in corpus)
    bound_ok &= all(rep.rho <= rep.bound for _, rep in filtered.values())
    regs = {}
    S2 = ring(["x", "y"])
    regs["G(S)"] = (FilteredModule(S2.unit_ideal()).reg, 0)
    hyper_ok = True
    for f in ("x^2", "x*y", "x^2 - y^2", "x^3", "x^3 + y^3", "x^2*y"):
        R = ring(["x", "y"], [f])
        deg = R.ideal_gens[0].degree()
        Mf = FilteredModule(R.unit_ideal())
        regs[f"G(Q[x,y]/({f}))"] = (Mf.reg, deg - 1)
        # independent: G(R) = P/(f) has Hilbert function dim R_n, and betti table 0 -> P(-deg f) -> P
        orc = DegreewiseOracle(R.free(1))
        hf = [len(orc.whole(n)) - len(orc.relations(n)) for n in range(9)]
        hyper_ok &= [Mf.graded.hilbert(n) for n in range(9)] == hf
        hyper_ok &= betti_table(Mf.graded.module).entries == {(0, 0): 1, (1, deg): 1}
    reg_ok = all(a == b for a, b in regs.values())
    ok = bound_ok and reg_ok and hyper_ok and len(corpus) >= 10
    report_line(request, 5, ok, f"rho <= reg on {len(corpus)} corpus rho records and "
                f"{len(filtered)} modules; reg(G(S)) = 0 and reg(G(Q[x,y]/(f))) = deg f - 1 "
                f"for deg f in {{2, 3}} ({len(regs) - 1} forms)")
    assert ok, regs


REGULAR = [(["x", "y"], ()), (["x", "y", "z"], ())]
NON_REGULAR = [(["x", "y"], ["x^2"]), (["x", "y"], ["x*y"]), (["x", "y", "z"], ["x^2 - y*z"])]


def test_criterion_6_regularity_criterion(request):
    bad = []
    runs = 0
    for names, ideal in REGULAR:
        R = ring(names, ideal)
        for M in (R.unit_ideal(), R.maximal_ideal):
            res = verify_regularity_criterion(R, M)
            runs += 1
            emb_ok = res.regular and res.embedding_dim == res.krull_dim
            if not (res.consistent and emb_ok and all(r.finite for r in res.pd_powers.values())):
                bad.append((names, ideal, "regular"))
    for names, ideal in NON_REGULAR:
        R = ring(names, ideal)
        r0 = rho(FilteredModule(R.unit_ideal())).rho
        res = verify_regularity_criterion(R, R.unit_ideal(), n_max=r0 + 4)
        runs += 1
        window = range(max(res.rho, 1), res.rho + 5)
        emb_ok = not res.regular and res.embedding_dim > res.krull_dim
        all_inf = sorted(res.pd_powers) == list(window) and all(
            r.value == "infinite" for r in res.pd_powers.values())
        confirmed = all(confirm_pd(R.m_power(n), r.value, r.certificate["betti"])[0]
                        for n, r in res.pd_powers.items())
        if not (res.consistent and emb_ok and all_inf and confirmed):
            bad.append((names, ideal, "non-regular"))
    ok = not bad
    report_line(request, 6, ok, f"{runs} runs: finite pd of m^n M on regular rings (M in {{R, m}}), "
                f"certified infinite pd of m^n R on three non-regular rings for n in [max(rho, 1), rho + 4]; "
                f"the literal n = 0 case fails because m^0 R = R is free (strict xfail below)")
    assert ok, bad


@pytest.mark.xfail(strict=True, reason="m^0 R = R is free, so pd_R(m^0 R) = 0 on every ring; "
                                       "the range [rho, rho + 4] must start at max(rho, 1)")
def test_criterion_6_literal_range_includes_n_zero():
    for names, ideal in NON_REGULAR:
        R = ring(names, ideal)
        assert rho(FilteredModule(R.unit_ideal())).rho == 0
        assert projdim(R.m_power(0)).value == "infinite"


def test_criterion_7_quotients_by_powers(request):
    bad = []
    cases = [(ring(["x", "y"]), "finite"), (ring(["x", "y"], ["x^2"]), "infinite")]
    for R, expected in cases:
        for n in (1, 2, 3):
            Q = quotient_module(R.m_power(n))
            direct = projdim(Q)
            via = projdim(R.m_power(n))
            # 0 -> m^n -> R -> R/m^n -> 0 with R free: pd(R/m^n) = pd(m^n) + 1 when finite
            reduced = (via.value, via.dim + 1 if via.finite else None)
            if direct.value != expected or (direct.value, direct.dim) != reduced:
                bad.append((R.ideal_gens, n))
            if not confirm_pd(Q, direct.value, direct.certificate["betti"])[0]:
                bad.append((R.ideal_gens, n, "oracle"))
    ok = not bad
    report_line(request, 7, ok, "pd(R/m^n) finite (= 2) over Q[x,y] and infinite over Q[x,y]/(x^2) "
                "for n = 1..3, matching pd(m^n) + 1 through the syzygy sequence")
    assert ok, bad


def _corpus_modules():
    for name in corpus_names():
        s = Session(RunConfig())
        script = parse(corpus_text(name))
        for st in script.statements:
            if type(st).__name__ == "RingDecl":
                s.declare_ring(st)
            elif type(st).__name__ == "ModuleDecl":
                s.declare_module(st)
        seen = set()
        for label, M in s.modules.items():
            key = (id(M.ring), label)
            if key in seen:
                continue
            seen.add(key)
            yield f"{name}:{label}", M
            if not M.is_zero():
                yield f"{name}:m*{label}", M.power(1)


def test_criterion_8_auslander_buchsbaum(request, corpus_q):
    bad = []
    finite = total = 0
    for label, M in _corpus_modules():
        if M.is_zero():
            continue
        total += 1
        r, r3 = projdim(M), projdim(M, extra=3)
        if (r.value, r.dim) != (r3.value, r3.dim):
            bad.append((label, "unstable"))
        if r.finite:
            finite += 1
            if r.dim + depth(M) != M.ring.depth:
                bad.append((label, "AB"))
    recs = [r for r in corpus_q.records if r.command.startswith("projdim")]
    recs_ok = all(r.verdict == "pass" and r.checks["stable_under_longer_resolution"] for r in recs)
    ok = not bad and recs_ok and finite >= 5
    report_line(request, 8, ok, f"pd + depth = depth R on {finite} finite-pd corpus modules; "
                f"verdicts unchanged with 3 extra resolution steps on all {total}")
    assert ok, bad


def test_criterion_9_determinism_and_fields(request, corpus_q):
    q2 = corpus_run(RunConfig(field="q", seed=0, gb_check=True))
    fp1 = corpus_run(RunConfig(field="fp:32003", seed=0))
    fp2 = corpus_run(RunConfig(field="fp:32003", seed=0))
    same_bytes = corpus_q.dumps() == q2.dumps() and fp1.dumps() == fp2.dumps()
    ids_q = [r.id for r in corpus_q.records]
    ids_p = [r.id for r in fp1.records]
    diffs = [(a.id, a.verdict, b.verdict, a.summary, b.summary)
             for a, b in zip(corpus_q.records, fp1.records)
             if a.verdict != b.verdict or json.dumps(a.summary, sort_keys=True) != json.dumps(b.summary, sort_keys=True)]
    ok = same_bytes and ids_q == ids_p and not diffs and corpus_q.passed and fp1.passed
    report_line(request, 9, ok, f"{len(ids_q)} corpus records: identical verdicts and summaries over Q and "
                f"F_32003 (seed 0); JSON byte-identical on repeated runs per field")
    assert ok, diffs


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
