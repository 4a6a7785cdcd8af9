"""Report records shared across the checkers and the CLI.

Verdicts are four-valued: true/false for decided conditions, not_evaluated
when a cap was exceeded, not_applicable when the instance kind lacks the
needed structure (e.g. multiplication).  False verdicts always carry a
witness; witnesses are built from labels so they serialize losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

TRUE = "true"
FALSE = "false"
NOT_EVALUATED = "not_evaluated"
NOT_APPLICABLE = "not_applicable"

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    verdict: str
    witness: object = None
    note: str = ""

    def __post_init__(self):
        if self.verdict not in (TRUE, FALSE, NOT_EVALUATED, NOT_APPLICABLE):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == FALSE and self.witness is None:
            raise ValueError(f"false verdict for {self.condition} must carry a witness")

    @property
    def is_true(self) -> bool:
        return self.verdict == TRUE

    @property
    def is_false(self) -> bool:
        return self.verdict == FALSE

    def to_dict(self) -> dict:
        out = {"condition": self.condition, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionReport":
        return cls(d["condition"], d["verdict"], d.get("witness"), d.get("note", ""))


@dataclass(frozen=True)
class Report:
    instance: str
    checks: tuple[ConditionReport, ...]
    summary: str = ""
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "instance": self.instance,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary or self.computed_summary(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            d["instance"],
            tuple(ConditionReport.from_dict(c) for c in d["checks"]),
            d.get("summary", ""),
            d.get("format_version", FORMAT_VERSION),
        )

    def computed_summary(self) -> str:
        if any(c.is_false for c in self.checks):
            return "fail"
        return "pass"

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"instance: {self.instance}"]
        for c in self.checks:
            line = f"  {c.condition}: {c.verdict}"
            if c.witness is not None:
                line += f"  witness={_compact(c.witness)}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        lines.append(f"summary: {self.summary or self.computed_summary()}")
        return "\n".join(lines) + "\n"

    def exit_code(self) -> int:
        return 1 if any(c.is_false for c in self.checks) else 0


def _compact(w) -> str:
    return json.dumps(w, sort_keys=False, separators=(",", ":"))
