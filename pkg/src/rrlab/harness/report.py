"""Check records and the verification report (JSON and fixed-width text)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1
MODES = ("certified", "heuristic", "evidence", "oracle")


@dataclass
class CheckRecord:
    """One executed command.

    ``checks`` are named boolean sub-verdicts; the record passes when all hold.
    ``summary`` holds the field-independent scalars compared across fields
    and against golden values; ``value`` holds the full result.
    """

    id: str
    anchor: str
    command: str
    inputs: dict
    mode: str
    checks: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    value: object = None
    certificate: dict = field(default_factory=dict)
    error: str | None = None
    seconds: float | None = None

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(self.checks.values()) else "fail"

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "command": self.command,
            "inputs": self.inputs,
            "mode": self.mode,
            "verdict": self.verdict,
            "checks": self.checks,
            "summary": self.summary,
            "value": self.value,
            "certificate": self.certificate,
        }
        if self.error is not None:
            out["error"] = self.error
        if timings and self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class VerificationReport:
    records: list
    config: dict = field(default_factory=dict)
    groebner: dict = field(default_factory=dict)
    timings: bool = False

    @property
    def passed(self) -> bool:
        return all(r.verdict == "pass" for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def record(self, rid: str) -> CheckRecord:
        for r in self.records:
            if r.id == rid:
                return r
        raise KeyError(rid)

    def extend(self, other: "VerificationReport") -> None:
        self.records.extend(other.records)
        for k, v in other.groebner.items():
            self.groebner[k] = self.groebner.get(k, 0) + v

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "config": self.config,
            "passed": self.passed,
            "counts": {v: sum(r.verdict == v for r in self.records) for v in ("pass", "fail", "error")},
            "groebner": self.groebner,
            "records": [r.to_json(self.timings) for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def table(self) -> str:
        """Fixed-width summary: one line per record."""
        rows = [("id", "command", "mode", "verdict", "result")]
        for r in self.records:
            if r.error is not None:
                result = r.error
            else:
                result = ", ".join(f"{k}={_short(v)}" for k, v in r.summary.items())
                bad = [k for k, v in r.checks.items() if not v]
                if bad:
                    result += "  failed: " + ", ".join(bad)
            rows.append((r.id, r.command, r.mode, r.verdict.upper(), result))
        widths = [min(max(len(row[i]) for row in rows), 44) for i in range(4)]
        lines = []
        for row in rows:
            cells = [_clip(row[i], widths[i]).ljust(widths[i]) for i in range(4)]
            lines.append("  ".join(cells) + "  " + row[4])
        lines.insert(1, "-" * (sum(widths) + 8 + 6))
        n = len(self.records)
        ok = sum(r.verdict == "pass" for r in self.records)
        lines.append(f"{ok}/{n} checks passed: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_short(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ",".join(f"{k}:{_short(x)}" for k, x in v.items()) + "}"
    return str(v)


def _clip(s: str, w: int) -> str:
    return s if len(s) <= w else s[:w - 1] + "~"
