"""The bundled example corpus and its golden values."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from ..report import CheckRecord, VerificationReport
from ..session import RunConfig, run

CORPUS_PACKAGE = "rrlab.harness.corpus"


def corpus_names() -> list[str]:
    files = resources.files(CORPUS_PACKAGE)
    return sorted(p.name[:-3] for p in files.iterdir() if p.name.endswith(".rr"))


def corpus_text(name: str) -> str:
    return (resources.files(CORPUS_PACKAGE) / f"{name}.rr").read_text(encoding="utf-8")


def golden(name: str) -> dict:
    path = resources.files(CORPUS_PACKAGE) / f"{name}.golden.json"
    if not path.is_file():
        return {"entries": []}
    return json.loads(path.read_text(encoding="utf-8"))


def apply_golden(report: VerificationReport, gold: dict) -> None:
    """Add a ``golden`` check to each record that has a golden entry."""
    by_id = {r.id: r for r in report.records}
    for entry in gold.get("entries", []):
        rec = by_id.get(entry["id"])
        if rec is None:
            report.records.append(CheckRecord(entry["id"], "golden value", "(missing)", {}, "certified",
                                              error="no record with this id was produced"))
            continue
        want = entry["summary"]
        rec.checks["golden"] = all(rec.summary.get(k) == v for k, v in want.items())
        rec.certificate["golden_provenance"] = entry.get("provenance", "")


def run_entry(name: str, config: RunConfig) -> VerificationReport:
    rep = run(corpus_text(name), config, prefix=f"{name}/")
    apply_golden(rep, golden(name))
    return rep


def corpus_run(config: RunConfig | None = None, names: list[str] | None = None,
               jobs: int | None = None) -> VerificationReport:
    """Run corpus entries (concurrently when ``jobs != 1``) and merge them in name order."""
    config = config or RunConfig()
    names = names if names is not None else corpus_names()
    if jobs is None:
        jobs = min(len(names), os.cpu_count() or 1)
    out = VerificationReport([], config.to_json(), {}, config.timings)
    if jobs <= 1 or len(names) <= 1:
        parts = [run_entry(n, config) for n in names]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run_entry, names, [config] * len(names)))
    for p in parts:
        out.extend(p)
    out.config["corpus"] = names
    return out
