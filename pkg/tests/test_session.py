import json

import pytest

from rrlab.harness import RunConfig, Session, parse, run
from rrlab.harness.report import SCHEMA_VERSION

SCRIPT = """ring S = poly(Q; x, y);
module Q = ideal(x^2, y^2);
module M = ideal(x^3, y^3, x^2*y^2);
rho S --expect 0;
rho S --expect 1;
mfull Q in S;
mfull S in S --expect true;
resolve Q --length 4;
closures M;
ring K = poly(Q; x) / (x^2);
module k = coker([[x]]);
rho k;
gdim k --bound 3;
"""


@pytest.fixture(scope="module")
def report():
    return run(SCRIPT)


def test_rho_of_ring_is_certified_zero(report):
    r = report.records[0]
    assert r.id == "01:S:rho" and r.mode == "certified" and r.verdict == "pass"
    assert r.summary["rho"] == 0 and r.checks["matches_expected"]


def test_wrong_expectation_fails(report):
    r = report.records[1]
    assert r.verdict == "fail" and r.checks["matches_expected"] is False
    assert not report.passed and report.exit_code == 1


def test_negative_m_fullness_is_labelled(report):
    r = report.records[2]
    assert r.summary == {"m_full": False}
    assert r.mode == "heuristic" and r.certificate["corroboration"] == "uncorroborated"
    assert r.value["label"] == "heuristic" and r.value["tried"]


def test_positive_m_fullness_carries_witness(report):
    r = report.records[3]
    assert r.verdict == "pass" and r.value["witness"] is not None
    assert r.checks["oracle_colon_inside"]


def test_resolve_reports_betti_table(report):
    r = report.records[4]
    assert r.summary == {"ranks": [2, 1], "complete": True, "pd": 1}


def test_closures_record(report):
    r = report.records[5]
    assert r.verdict == "pass", r.checks
    assert r.summary["rho"] == 2


def test_depth_zero_is_an_error_record(report):
    r = report.records[6]
    assert r.verdict == "error" and "depth M = 0" in r.error


def test_gdim_is_evidence(report):
    r = report.records[7]
    assert r.mode == "evidence" and r.summary["gdim"] == "evidence"


def test_json_shape(report):
    data = json.loads(report.dumps())
    assert data["schema"] == SCHEMA_VERSION
    assert data["counts"] == {"pass": 6, "fail": 1, "error": 1}
    assert {"id", "anchor", "command", "inputs", "mode", "verdict", "checks", "summary", "value",
            "certificate"} <= set(data["records"][0])
    assert "seconds" not in data["records"][0]


def test_table_has_one_line_per_record(report):
    lines = report.table().splitlines()
    assert len(lines) == len(report.records) + 3
    assert lines[-1] == "6/8 checks passed: FAIL"


def test_timings_only_on_request():
    rep = run("ring S = poly(Q; x, y); rho S;", RunConfig(timings=True))
    assert "seconds" in rep.to_json()["records"][0]


def test_field_override_applies_to_every_ring():
    s = Session(RunConfig(field="fp:32003"))
    s.run(parse("ring S = poly(Q; x, y); ring T = poly(Q; z); rho S; rho T;"))
    assert all(M.ring.field.characteristic == 32003 for M in s.modules.values())


def test_gb_check_counts(report):
    rep = run("ring S = poly(Q; x, y); module M = ideal(x^2, x*y); projdim M;", RunConfig(gb_check=True))
    assert rep.groebner["computed"] > 0
    assert rep.groebner["verified"] == rep.groebner["computed"]


def test_command_ids_are_stable():
    rep = run("ring S = poly(Q; x, y); module M = maximal(); mfull M in S; reg S;", prefix="p/")
    assert [r.id for r in rep.records] == ["p/01:M S:mfull", "p/02:S:reg"]
