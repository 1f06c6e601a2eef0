"""Executing a parsed script against the algebra layers."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from ..exact.polynomial import PolyRing
from ..exact.scalars import Field, field_from_spec
from ..filtration import (FilteredModule, find_superficial, is_m_full, is_superficial, mfull_split,
                          ratliff_rush, ratliff_rush_chain, rho, strata_hilbert)
from ..groebner import STATS, VectorPoly
from ..groebner import engine as gb_engine
from ..homology import depth, gdim_evidence, projdim, resolve
from ..modcalc import DEFAULT_DEGREE_BOUND, DegreewiseOracle, GradedRing, Submodule, oracle_eval
from ..modcalc.submodule import colon_elem, colon_ideal, intersect
from .dsl import Command, ModuleDecl, RingDecl, SessionScript, field_of, format_statement, parse
from .report import CheckRecord, VerificationReport
from .theorem import verify_regularity_criterion

ANCHORS = {
    "rho": "Ratliff-Rush filtration: rho(M) <= reg G(M); rho(M) = 0 iff depth G(M) > 0",
    "ratliff_rush": "Ratliff-Rush closure of m^n M",
    "superficial": "superficial elements as filter-regular initial forms",
    "mfull": "m-full submodules",
    "split": "socle splitting of an m-full submodule",
    "closures": "Ratliff-Rush closures are m-full, split off the socle and satisfy the colon recursion",
    "resolve": "minimal graded free resolution",
    "depth": "depth via Auslander-Buchsbaum over the polynomial ring",
    "projdim": "projective dimension decided at depth R + 1; Auslander-Buchsbaum",
    "reg": "regularity of the associated graded module",
    "graded": "associated graded module of the m-adic filtration",
    "gdim": "G-dimension: bounded Ext-vanishing evidence",
    "verify": "finite projective dimension of m^n M (n >= rho(M)) forces R regular",
    "crosscheck": "Groebner-path operations against degreewise linear algebra",
    "print": "module presentation",
}


@dataclass
class RunConfig:
    """Run options; ``field`` overrides the field of every declared ring."""

    field: str | None = None
    seed: int = 0
    max_degree: int = DEFAULT_DEGREE_BOUND
    attempts: int = 16
    evidence_bound: int | None = None
    timings: bool = False
    gb_check: bool = False

    def field_obj(self) -> Field | None:
        return field_from_spec(self.field) if self.field else None

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("timings")
        return out


class CommandError(RuntimeError):
    pass


def _vec_strs(gens) -> list[str]:
    return [str(g) for g in gens]


class Session:
    """Interprets declarations and commands in order."""

    def __init__(self, config: RunConfig | None = None, prefix: str = ""):
        self.config = config or RunConfig()
        self.prefix = prefix
        self.rings: dict[str, GradedRing] = {}
        self.modules: dict[str, Submodule] = {}
        self.filtered: dict[str, FilteredModule] = {}
        self.aliases: dict[str, str] = {}
        self.records: list[CheckRecord] = []
        self._count = 0

    # -- declarations --------------------------------------------------------
    def declare_ring(self, d: RingDecl) -> None:
        field = self.config.field_obj() or field_of(d.field)
        S = PolyRing(field, d.variables)
        ideal = [S.parse(g) for g in d.ideal]
        R = GradedRing(field, d.variables, ideal, name=d.name)
        self.rings[d.name] = R
        self.modules[d.name] = R.unit_ideal()

    def declare_module(self, d: ModuleDecl) -> None:
        R = self.rings[d.ring]
        S = R.S
        k, a = d.kind, d.args
        if k == "ideal":
            M = R.ideal([S.parse(g) for g in a])
        elif k == "cyclic":
            F = R.free(1)
            M = F.quotient([F.vector([S.parse(g)]) for g in a]).whole()
        elif k == "maximal":
            M = R.maximal_ideal
        elif k == "coker":
            rows, shifts = a
            F = R.free(len(rows), shifts)
            cols = [F.vector([S.parse(rows[i][j]) for i in range(len(rows))]) for j in range(len(rows[0]))]
            M = F.quotient(cols).whole()
        elif k == "ref":
            M = self.modules[a[0]]
            self.aliases[d.name] = self.aliases.get(a[0], a[0])
        elif k == "power":
            M = self.filt(a[0]).power(a[1])
        elif k == "ratliff_rush":
            M = ratliff_rush(self.filt(a[0]), a[1], seed=self.config.seed)
        elif k == "sub":
            src = self.modules[a[0]]
            M = Submodule(src.ambient, [src.ambient.vector([S.parse(e) for e in v]) for v in a[1]])
        else:
            raise CommandError(f"unknown module kind {k}")
        self.modules[d.name] = M

    def filt(self, name: str) -> FilteredModule:
        key = self.aliases.get(name, name)
        if key not in self.filtered:
            self.filtered[key] = FilteredModule(self.modules[key], key)
        return self.filtered[key]

    # -- running -------------------------------------------------------------
    def run(self, script: SessionScript) -> VerificationReport:
        old = gb_engine.SELF_CHECK
        before = dict(STATS)
        if self.config.gb_check:
            gb_engine.SELF_CHECK = True
        try:
            for st in script.statements:
                if isinstance(st, RingDecl):
                    self.declare_ring(st)
                elif isinstance(st, ModuleDecl):
                    self.declare_module(st)
                else:
                    self.records.append(self.execute(st))
        finally:
            gb_engine.SELF_CHECK = old
        stats = {k: STATS[k] - before.get(k, 0) for k in STATS}
        return VerificationReport(self.records, self.config.to_json(), stats, self.config.timings)

    def execute(self, cmd: Command) -> CheckRecord:
        self._count += 1
        text = format_statement(cmd)[:-1]
        rid = f"{self.prefix}{self._count:02d}:{' '.join(str(a) for a in cmd.args if a != 'in')}:{cmd.name}"
        rec = CheckRecord(rid, ANCHORS[cmd.name], text, self._inputs(cmd), "certified")
        t0 = time.perf_counter()
        try:
            getattr(self, "cmd_" + cmd.name)(cmd, rec)
        except Exception as exc:  # reported per command, the run goes on
            rec.error = f"{type(exc).__name__}: {exc}"
        rec.seconds = time.perf_counter() - t0
        expect = cmd.option("expect")
        if expect is not None and rec.error is None:
            got = rec.summary.get("expect_key")
            rec.checks["matches_expected"] = _same(got, expect)
            rec.summary.pop("expect_key", None)
        else:
            rec.summary.pop("expect_key", None)
        return rec

    def _inputs(self, cmd: Command) -> dict:
        out = {"options": {k: v for k, v in cmd.options}}
        for a in cmd.args:
            if a in self.modules:
                M = self.modules[a]
                R = M.ring
                out[a] = {"ring": R.describe(), "rank": M.rank, "shifts": list(M.shifts),
                          "relations": _vec_strs(M.ambient.relations), "gens": _vec_strs(M.gens)}
        return out

    def _module(self, name: str) -> Submodule:
        return self.modules[name]

    def _witness(self, cmd: Command, M: Submodule):
        w = cmd.option("witness")
        return M.ring.S.parse(w) if w is not None else None

    # -- commands ------------------------------------------------------------
    def cmd_print(self, cmd, rec):
        M = self._module(cmd.args[0])
        rec.value = {"gens": _vec_strs(M.gens), "min_gens": _vec_strs(M.trim().gens),
                     "relations": _vec_strs(M.ambient.relations), "shifts": list(M.shifts)}
        rec.summary = {"rank": M.rank, "ngens": len(M.trim().gens)}

    def cmd_rho(self, cmd, rec):
        Mf = self.filt(cmd.args[0])
        rep = rho(Mf, self.config.seed, self.config.attempts)
        B = rep.bound
        rec.value = rep.to_json()
        rec.checks.update(rep.checks)
        rec.checks["rho_at_most_reg"] = rep.rho <= B
        # an independent homological depth of G(M) against rho = 0
        gdepth = Mf.graded_depth
        rec.checks["depth_G_positive_iff_rho_zero"] = (gdepth > 0) == (rep.rho == 0)
        # the closures found by bounded-degree linear algebra never exceed the certified ones
        ocheck = {}
        for n in range(1, B + 2):
            C = rep.closure(n) if n <= B else Mf.power(n)
            ocheck[str(n)] = _oracle_rr(C, Mf.module, n, self.config.max_degree)
        rec.checks["oracle_closures_inside"] = all(o["inside"] for o in ocheck.values())
        rec.checks["oracle_closures_equal_where_settled"] = all(o["equal_where_settled"] for o in ocheck.values())
        rec.certificate = {"witness": rep.witness.to_json() if rep.witness else None,
                           "graded_depth": gdepth, "oracle": ocheck,
                           "hilbert_checked_up_to": Mf.graded.checked_up_to}
        rec.summary = {"rho": rep.rho, "reg": B, "depth_G": gdepth, "expect_key": rep.rho}

    def cmd_ratliff_rush(self, cmd, rec):
        Mf = self.filt(cmd.args[0])
        n = cmd.args[1]
        mode = cmd.option("mode", "certified")
        if mode not in ("certified", "chain"):
            raise CommandError(f"unknown mode {mode!r}")
        if mode == "certified":
            C = ratliff_rush(Mf, n, "certified", seed=self.config.seed)
            T, k = ratliff_rush_chain(Mf, n)
            rec.checks["chain_agrees"] = C == T
            rec.certificate = {"reg_bound": Mf.reg if n else None, "chain_stopped_at": k}
        else:
            rec.mode = "heuristic"
            C, k = ratliff_rush_chain(Mf, n)
            if Mf.depth > 0:
                rec.checks["certified_agrees"] = C == ratliff_rush(Mf, n, "certified", seed=self.config.seed)
                rec.certificate = {"chain_stopped_at": k, "corroborated_by": "certified closure"}
            else:
                rec.certificate = {"chain_stopped_at": k, "corroborated_by": "uncorroborated"}
        o = _oracle_rr(C, Mf.module, n, self.config.max_degree) if n else None
        if o is not None:
            rec.checks["oracle_inside"] = o["inside"]
            rec.certificate["oracle"] = o
        P = Mf.power(n)
        rec.value = {"closure": _vec_strs(C.trim().gens), "power": _vec_strs(P.gens)}
        rec.summary = {"equals_power": C == P, "ngens": len(C.trim().gens)}

    def cmd_superficial(self, cmd, rec):
        Mf = self.filt(cmd.args[0])
        w = find_superficial(Mf, self.config.attempts, self.config.seed)
        ok, dim = is_superficial(Mf, w.x)
        rec.checks["recheck"] = ok and dim == w.annihilator_dim
        # (m^n M :_M x) = m^(n-1) M just past the regularity bound
        B = Mf.reg
        stab = {}
        if Mf.depth > 0:
            for n in range(B + 1, B + 5):
                stab[str(n)] = colon_elem(Mf.power(n), w.x, Mf.module) == Mf.power(n - 1)
            rec.checks["colon_stabilizes_past_reg"] = all(stab.values())
        rec.value = w.to_json()
        rec.certificate = {"annihilator_dim": w.annihilator_dim, "colon_stabilization": stab}
        rec.summary = {"found": True, "tried": len(w.tried)}

    def cmd_mfull(self, cmd, rec):
        N, M = self._module(cmd.args[0]), self._module(cmd.args[2])
        rec.checks["submodule"] = N <= M
        x = self._witness(cmd, M)
        res = is_m_full(N, M, x, self.config.attempts, self.config.seed, self.filt(cmd.args[2]))
        rec.value = res.to_json()
        if res.full:
            # the defining colon recomputed degree by degree must not exceed N
            mN = N * N.ring.maximal_ideal
            o = oracle_eval({"kind": "colon", "N": mN, "f": res.witness, "M": M}, self.config.max_degree)
            orc = DegreewiseOracle(N.ambient)
            rec.checks["oracle_colon_inside"] = all(
                orc.piece(N.gens, d).contains_all(sp) for d, sp in o.spaces.items())
        elif res.heuristic:
            rec.mode = "heuristic"
            rec.certificate["corroboration"] = "uncorroborated"
        rec.summary = {"m_full": res.full, "expect_key": res.full}

    def cmd_split(self, cmd, rec):
        N, M = self._module(cmd.args[0]), self._module(cmd.args[2])
        x = self._witness(cmd, M)
        if x is None:
            res = is_m_full(N, M, None, self.config.attempts, self.config.seed, self.filt(cmd.args[2]))
            if not res.full:
                raise CommandError("no m-full witness found; pass one with --witness")
            x = res.witness
        rep = mfull_split(N, M, x, seed=self.config.seed)
        rec.checks.update(rep.checks)
        rec.value = rep.to_json()
        rec.summary = {"l": rep.l, "valid": rep.valid}

    def cmd_closures(self, cmd, rec):
        Mf = self.filt(cmd.args[0])
        M = Mf.module
        rep = rho(Mf, self.config.seed, self.config.attempts)
        B, x = rep.bound, rep.witness.x
        closures = [rep.closure(n) for n in range(B + 1)] + [Mf.power(B + 1)]
        pairs = []
        mfull_ok = split_ok = recursion_ok = True
        for n, N in enumerate(closures):
            full = is_m_full(N, M, x)
            entry = {"n": n, "m_full": full.full, "witness": str(x)}
            mfull_ok &= full.full
            if full.full:
                sp = mfull_split(N, M, x, seed=self.config.seed)
                entry.update({"l": sp.l, "split_valid": sp.valid})
                split_ok &= sp.valid
            if n + 1 < len(closures):
                # (closure_(n+1) :_M x) = closure_n
                rec_n = colon_elem(closures[n + 1], x, M) == N
                entry["colon_recursion"] = rec_n
                recursion_ok &= rec_n
            pairs.append(entry)
        rec.checks["closures_m_full"] = mfull_ok
        rec.checks["socle_splitting"] = split_ok
        rec.checks["colon_recursion"] = recursion_ok
        rec.checks["closure_equals_power_from_rho"] = all(
            closures[n] == Mf.power(n) for n in range(rep.rho, B + 2))
        rec.value = {"rho": rep.rho, "reg": B, "pairs": pairs}
        rec.certificate = {"witness": rep.witness.to_json()}
        rec.summary = {"rho": rep.rho, "pairs": len(pairs), "l": [p.get("l") for p in pairs]}

    def cmd_resolve(self, cmd, rec):
        M = self._module(cmd.args[0])
        length = cmd.option("length")
        if length is None and not M.ring.is_polynomial_ring:
            length = M.ring.nvars + 2
        res = resolve(M, length)
        res.check()
        rec.checks["complex_and_minimal"] = True
        b = res.betti()
        rec.value = {"betti": b.to_json(), "table": b.format().split("\n"),
                     "differentials": [[str(c) for c in f.columns] for f in res.maps[1:]]}
        rec.summary = {"ranks": b.ranks(), "complete": res.complete, "pd": b.pd}

    def cmd_depth(self, cmd, rec):
        M = self._module(cmd.args[0])
        d = depth(M)
        rec.value = {"depth": d}
        rec.certificate = {"method": "Auslander-Buchsbaum over the polynomial ring", "nvars": M.ring.nvars}
        rec.summary = {"depth": d, "expect_key": d}

    def cmd_projdim(self, cmd, rec):
        M = self._module(cmd.args[0])
        r = projdim(M)
        r3 = projdim(M, extra=3)
        rec.checks["stable_under_longer_resolution"] = (r.value, r.dim) == (r3.value, r3.dim)
        dR = M.ring.depth
        dM = depth(M)
        if r.finite:
            rec.checks["auslander_buchsbaum"] = r.dim + dM == dR
        rec.value = r.to_json()
        rec.certificate = {"depth_R": dR, "depth_M": dM, "longer_run": r3.certificate["computed_length"]}
        rec.summary = {"pd": r.value, "dim": r.dim, "expect_key": r.value}

    def cmd_reg(self, cmd, rec):
        Mf = self.filt(cmd.args[0])
        reg = Mf.reg
        G = Mf.graded
        hil = {n: G.hilbert(n) for n in range(5)}
        rec.checks["strata_hilbert_agrees"] = all(strata_hilbert(Mf.module, n) == h for n, h in hil.items())
        rec.value = {"reg": reg}
        rec.certificate = {"hilbert": {str(n): h for n, h in hil.items()},
                           "hilbert_checked_up_to": G.checked_up_to}
        rec.summary = {"reg": reg, "expect_key": reg}

    def cmd_graded(self, cmd, rec):
        Mf = self.filt(cmd.args[0])
        G = Mf.graded
        hil = [G.hilbert(n) for n in range(7)]
        rec.checks["strata_hilbert_agrees"] = all(strata_hilbert(Mf.module, n) == h for n, h in enumerate(hil))
        rec.value = G.to_json(Mf.ring.field)
        rec.value["ring"] = G.P.describe()
        rec.summary = {"rank": G.rank, "hilbert": hil}

    def cmd_gdim(self, cmd, rec):
        M = self._module(cmd.args[0])
        bound = cmd.option("bound", self.config.evidence_bound)
        r = gdim_evidence(M, bound)
        rec.mode = "evidence" if r.value == "evidence" else "certified"
        rec.value = r.to_json()
        rec.summary = {"gdim": r.value, "expect_key": r.value}

    def cmd_verify(self, cmd, rec):
        Mf = self.filt(cmd.args[0])
        res = verify_regularity_criterion(Mf.ring, Mf, cmd.option("nmax"), bool(cmd.option("gdim")),
                                          self.config.seed, self.config.attempts, self.config.evidence_bound)
        rec.checks.update(res.checks)
        rec.value = res.to_json()
        if res.gdim:
            rec.certificate["gdim"] = "evidence label: bounded Ext vanishing only"
        rec.summary = res.summary()

    def cmd_crosscheck(self, cmd, rec):
        M = self._module(cmd.args[0])
        D = cmd.option("degree", self.config.max_degree)
        rec.mode = "oracle"
        R = M.ring
        m = R.maximal_ideal
        x = R.S.gens[0]
        ell = sum(R.S.gens[1:], R.S.zero) + x
        mM = M * m
        m2M = mM * m
        xM = M * R.ideal([x])
        tasks = {
            "product m*M": ({"kind": "product", "I": m, "N": M}, mM),
            "colon (m^2 M : x)": ({"kind": "colon", "N": m2M, "f": x, "M": M}, colon_elem(m2M, x, M)),
            "colon (m^2 M : l)": ({"kind": "colon", "N": m2M, "f": ell, "M": M}, colon_elem(m2M, ell, M)),
            "colon (m^2 M : m)": ({"kind": "colon_ideal", "N": m2M, "I": m, "M": M}, colon_ideal(m2M, m, M)),
            "intersect m^2 M, x M": ({"kind": "intersect", "N1": m2M, "N2": xM}, intersect(m2M, xM)),
        }
        detail = {}
        for name, (task, got) in tasks.items():
            o = oracle_eval(task, D)
            bad = o.mismatches(got)
            detail[name] = {"mismatched_degrees": bad, "conclusive": o.conclusive}
            rec.checks[name] = not bad
        rec.certificate = {"degree_bound": D, "operations": detail}
        rec.summary = {"operations": len(tasks), "degree_bound": D}


def _oracle_rr(C: Submodule, M: Submodule, n: int, D: int) -> dict:
    """Compare a closure with the bounded-degree Ratliff-Rush chain."""
    o = oracle_eval({"kind": "ratliff_rush", "M": M, "n": n}, D)
    orc = DegreewiseOracle(C.ambient)
    growing = set(o.value["growing"])
    inside = True
    unsettled = []
    equal = True
    for d, sp in o.spaces.items():
        piece = orc.piece(C.gens, d)
        if not piece.contains_all(sp):
            inside = False
        if piece != sp:
            if d in growing:
                unsettled.append(d)
            else:
                equal = False
    return {"inside": inside, "equal_where_settled": equal, "unsettled_degrees": unsettled}


def _same(got, expect) -> bool:
    if isinstance(got, bool):
        return str(expect).lower() == ("true" if got else "false")
    return str(got) == str(expect)


def run(script: SessionScript | str, config: RunConfig | None = None, prefix: str = "") -> VerificationReport:
    """Run a script (text or parsed) and return its report."""
    if isinstance(script, str):
        script = parse(script)
    return Session(config, prefix).run(script)
