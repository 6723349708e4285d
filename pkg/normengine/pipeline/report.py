"""Reports produced by the pipeline, and their JSON and text forms."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import click

from normengine.logic import Literal, literal_key
from normengine.norms import AnomalyFinding
from normengine.util.constants import ACCENT_COLOR, REPORT_SCHEMA_VERSION
from normengine.util.serial import JSON_T, SerializableMixin, dumps


class Mode(str, Enum):
    """Which findings a report keeps when there are several stable models."""

    SKEPTICAL = "skeptical"
    CREDULOUS = "credulous"


@dataclass(frozen=True)
class AnomalyReport(SerializableMixin):
    """The outcome of running one case through the whole pipeline."""

    type_id = "report"

    case_id: str
    mode: Mode
    models_found: int
    exhausted: bool
    findings: "tuple[AnomalyFinding, ...]"
    cause_sentence: str
    facts: "tuple[Literal, ...]" = ()
    warnings: "tuple[str, ...]" = ()
    timings: "dict[str, float]" = field(default_factory=dict, compare=False)

    def to_object(self) -> "dict[str, JSON_T]":
        obj = super().to_object()
        obj.update(self.canonical())
        obj["timings"] = {stage: round(seconds, 6) for stage, seconds in self.timings.items()}
        return obj

    def canonical(self) -> "dict[str, JSON_T]":
        """The serial form without timings: equal inputs give equal canonical forms."""
        return {
            "schema": REPORT_SCHEMA_VERSION,
            "case_id": self.case_id,
            "mode": self.mode.value,
            "models_found": self.models_found,
            "exhausted": self.exhausted,
            "findings": [f.to_object() for f in self.findings],
            "cause_sentence": self.cause_sentence,
            "facts": [str(lit) for lit in sorted(self.facts, key=literal_key)],
            "warnings": list(self.warnings),
        }

    def canonical_json(self) -> str:
        return dumps(self.canonical())

    def text(self) -> str:
        """A human-readable rendering."""
        plural = "" if self.models_found == 1 else "s"
        more = "" if self.exhausted else " (cap reached, more exist)"
        lines = [
            f"Case {click.style(self.case_id, fg=ACCENT_COLOR)}: "
            f"{self.models_found} stable model{plural}{more}, {self.mode.value} findings.",
        ]
        for warning in self.warnings:
            lines.append(f"  warning: {warning}")
        if self.findings:
            lines.append("Findings:")
            for finding in self.findings:
                lines.append(
                    f"  {finding.kind.value:<14} {finding.property} / {finding.agent} / "
                    f"time {finding.time}  ({finding.violated_rule})"
                )
        lines.append(f"Cause: {self.cause_sentence}")
        return "\n".join(lines)


@dataclass(frozen=True)
class CaseOutcome(SerializableMixin):
    """One corpus case checked against its expected block."""

    type_id = "case_outcome"

    case_id: str
    passed: bool
    missing: "tuple[Literal, ...]" = ()
    unexpected: "tuple[Literal, ...]" = ()
    error: Optional[str] = None
    seconds: float = field(default=0.0, compare=False)

    def to_object(self) -> "dict[str, JSON_T]":
        obj = super().to_object()
        obj.update(
            {
                "case_id": self.case_id,
                "passed": self.passed,
                "missing": [str(lit) for lit in self.missing],
                "unexpected": [str(lit) for lit in self.unexpected],
                "error": self.error,
            }
        )
        return obj

    def diff(self) -> "list[str]":
        """Lines describing why the case failed."""
        lines = []
        if self.error is not None:
            lines.append(f"error: {self.error}")
        lines.extend(f"- expected in every model: {lit}" for lit in self.missing)
        lines.extend(f"+ expected in no model: {lit}" for lit in self.unexpected)
        return lines


@dataclass(frozen=True)
class CorpusResult(SerializableMixin):
    """Pass/fail of every case in a corpus, sorted by case id."""

    type_id = "corpus"

    outcomes: "tuple[CaseOutcome, ...]" = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.outcomes, key=lambda o: o.case_id))
        object.__setattr__(self, "outcomes", ordered)

    @property
    def passed(self) -> int:
        return sum(1 for o in self.outcomes if o.passed)

    @property
    def failed(self) -> int:
        return len(self.outcomes) - self.passed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def to_object(self) -> "dict[str, JSON_T]":
        obj = super().to_object()
        obj.update(
            {
                "schema": REPORT_SCHEMA_VERSION,
                "outcomes": [o.to_object() for o in self.outcomes],
                "passed": self.passed,
                "failed": self.failed,
            }
        )
        return obj

    def table(self) -> str:
        width = max([len(o.case_id) for o in self.outcomes] + [4])
        lines = []
        for outcome in self.outcomes:
            status = click.style("pass", fg="green") if outcome.passed else click.style("FAIL", fg="red")
            lines.append(f"{outcome.case_id:<{width}}  {status}  {outcome.seconds:.3f}s")
            lines.extend(f"{'':<{width}}    {line}" for line in outcome.diff())
        lines.append(f"{self.passed}/{len(self.outcomes)} cases passed.")
        return "\n".join(lines)
