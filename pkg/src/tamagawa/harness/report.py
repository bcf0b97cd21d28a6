"""Check results and scan reports with deterministic JSON serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "summary"):
        return x.summary()
    return x


@dataclass
class CheckResult:
    proposition: str
    instance: dict
    verdict: str
    evidence: list = field(default_factory=list)
    exception_tag: dict | None = None
    details: dict = field(default_factory=dict)
    replay: str | None = None
    lower_bound_only: bool = False
    sort_key: tuple = ()

    def to_dict(self) -> dict:
        out = {
            "proposition": self.proposition,
            "instance": _jsonable(self.instance),
            "verdict": self.verdict,
            "evidence": _jsonable(self.evidence),
        }
        if self.exception_tag is not None:
            out["exception_tag"] = _jsonable(self.exception_tag)
        if self.details:
            out["details"] = _jsonable(self.details)
        if self.lower_bound_only:
            out["lower_bound_only"] = True
        if self.replay:
            out["replay"] = self.replay
        return out


@dataclass
class ScanReport:
    name: str
    config: dict
    results: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def sort(self) -> None:
        self.results.sort(key=lambda r: r.sort_key)

    @property
    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.results:
            counts[r.verdict] += 1
        counts["total"] = len(self.results)
        counts["exceptions"] = sum(1 for r in self.results if r.exception_tag is not None)
        return counts

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "report": self.name,
            "config": _jsonable(self.config),
            "summary": self.summary,
            "notes": list(self.notes),
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"


def merge(name: str, config: dict, reports: list[ScanReport]) -> ScanReport:
    out = ScanReport(name, config)
    for r in reports:
        out.results.extend(r.results)
        out.notes.extend(r.notes)
    return out
