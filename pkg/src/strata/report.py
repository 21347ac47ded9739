"""Reports: a list of check records plus the field and tool version."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .stratification import CheckReport

VERSION = "0.1.0"
STATUSES = ("pass", "fail", "hypothesis_failed", "error")
# worst status wins when several checks are combined
_RANK = {"pass": 0, "hypothesis_failed": 1, "fail": 2, "error": 3}


def combine_status(statuses) -> str:
    statuses = list(statuses)
    if not statuses:
        return "pass"
    return max(statuses, key=lambda s: _RANK[s])


@dataclass
class Report:
    field: str
    checks: list = dc_field(default_factory=list)
    seed: int | None = None
    timing: dict | None = None

    @property
    def status(self) -> str:
        return combine_status(c.status for c in self.checks)

    def add(self, check: CheckReport) -> CheckReport:
        self.checks.append(check)
        return check

    def to_dict(self) -> dict:
        out = {"tool": "strata", "version": VERSION, "field": self.field, "status": self.status}
        if self.seed is not None:
            out["seed"] = self.seed
        out["checks"] = [c.to_dict() for c in self.checks]
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        checks = [CheckReport(c["check"], c["status"], c["data"], c["witnesses"]) for c in d["checks"]]
        return cls(d["field"], checks, d.get("seed"), d.get("timing"))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def report_schema() -> dict:
    return json.loads(resources.files("strata").joinpath("data/report.schema.json").read_text())


def validate_report(d: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``d`` is not a valid report."""
    import jsonschema

    jsonschema.validate(d, report_schema())
