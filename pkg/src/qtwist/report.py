"""Check records and campaign reports with deterministic serialization."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

PASS = "pass"
FAIL = "fail"
WARN = "warn"


@dataclass
class CheckRecord:
    id: str
    family: str = ""
    i: Optional[int] = None
    j: Optional[int] = None
    lam: Optional[tuple] = None
    status: str = PASS
    scalar: str = ""
    witness: str = ""

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "family": self.family,
            "i": None if self.i is None else self.i + 1,
            "j": None if self.j is None else self.j + 1,
            "lambda": None if self.lam is None else list(self.lam),
            "status": self.status,
            "scalar": self.scalar,
        }
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    campaign: str
    datum: str = ""
    case: str = ""
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0

    def add(self, record: CheckRecord) -> CheckRecord:
        self.checks.append(record)
        return record

    def extend(self, records) -> None:
        self.checks.extend(records)

    def merge(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        self.elapsed_ms += other.elapsed_ms

    def finalize(self) -> "Report":
        self.checks.sort(key=lambda c: c.id)
        return self

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "warn": 0}
        for c in self.checks:
            counts[c.status] = counts.get(c.status, 0) + 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list:
        return [c for c in self.checks if c.status == FAIL]

    def identity_dict(self) -> dict:
        """Everything except wall-clock timing; the determinism contract."""
        from . import __version__

        return {
            "campaign": self.campaign,
            "datum": self.datum,
            "case": self.case,
            "engine": __version__,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
        }

    def to_dict(self, include_timing: bool = True) -> dict:
        out = self.identity_dict()
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = ["campaign: %s  datum: %s  case: %s" % (self.campaign, self.datum, self.case)]
        for c in self.checks:
            line = "  [%s] %s" % (c.status.upper(), c.id)
            if c.scalar:
                line += "  scalar=%s" % c.scalar
            if c.witness:
                line += "  witness=%s" % c.witness
            lines.append(line)
        s = self.summary
        lines.append(
            "  summary: %d pass, %d fail, %d warn  (%d ms)"
            % (s["pass"], s["fail"], s["warn"], self.elapsed_ms)
        )
        return "\n".join(lines)


def run_tasks(tasks, jobs: int = 1) -> list:
    """Evaluate independent zero-argument callables, each returning a list of
    CheckRecords; results are concatenated and later sorted by the report."""
    if jobs <= 1 or len(tasks) <= 1:
        results = [t() for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: t(), tasks))
    out = []
    for chunk in results:
        out.extend(chunk)
    return out
