"""Check results and suite reports shared by the verifiers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class Report:
    suite: str
    params: Dict[str, object] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, detail))
        return ok

    def note(self, name: str, detail: str) -> None:
        """Informational entry; recorded as passing so it never fails a run."""
        self.checks.append(Check(name, PASS, "note: " + detail))

    def skip(self, name: str, detail: str = "") -> None:
        self.checks.append(Check(name, SKIPPED, detail))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def sorted_checks(self) -> List[Check]:
        return sorted(self.checks, key=lambda c: c.name)

    def to_json(self) -> str:
        doc = {
            "suite": self.suite,
            "params": self.params,
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail} for c in self.sorted_checks()
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        lines.append("params: " + ", ".join(f"{k}={v}" for k, v in self.params.items()))
        for c in self.sorted_checks():
            line = f"[{c.status.upper():7}] {c.name}"
            if c.detail:
                line += f"  -- {c.detail}"
            lines.append(line)
        n_fail = len(self.failures())
        lines.append(f"summary: {len(self.checks)} checks, {n_fail} failed")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["suite", "params", "checks"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "params": {
            "type": "object",
            "required": ["n", "metric", "maxDegree", "seed"],
            "properties": {
                "n": {"type": "integer", "minimum": 2},
                "metric": {"type": "string"},
                "maxDegree": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer"},
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "detail"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, SKIPPED]},
                    "detail": {"type": "string"},
                },
            },
        },
    },
}
