"""Rewrite the corpus golden files, keeping only independently confirmed values.

Usage: python3 tools/regen_golden.py [name ...]
"""

import json
import sys
from importlib import resources

from rrlab.harness.corpus import CORPUS_PACKAGE, corpus_names, corpus_text
from rrlab.harness.corpus.confirm import confirm_record
from rrlab.harness.dsl import parse
from rrlab.harness.session import RunConfig, Session


def regen(name: str) -> dict:
    session = Session(RunConfig(), prefix=f"{name}/")
    report = session.run(parse(corpus_text(name)))
    entries = []
    for rec in report.records:
        if rec.verdict != "pass":
            raise SystemExit(f"{rec.id} does not pass; refusing to record goldens")
        got = confirm_record(session, rec)
        if got is not None:
            prov, summary = got
            entries.append({"id": rec.id, "summary": summary, "provenance": prov})
    return {"script": f"{name}.rr", "field": "Q", "seed": 0, "entries": entries}


def main(names):
    base = resources.files(CORPUS_PACKAGE)
    for name in names or corpus_names():
        data = regen(name)
        path = base / f"{name}.golden.json"
        with open(str(path), "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"{name}: {len(data['entries'])} confirmed entries")


if __name__ == "__main__":
    main(sys.argv[1:])
