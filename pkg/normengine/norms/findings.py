"""Read anomaly findings out of a stable model."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from normengine.engine import GroundProgram, Interpretation
from normengine.engine.translate import FORWARD
from normengine.logic import (
    Combine,
    Constant,
    Literal,
    Predicate,
    Term,
    TimePoint,
    literal,
)
from normengine.util.serial import SerializableMixin

DISRUPTIVE_FACTOR = Constant("disruptive_factor")


class FindingKind(str, Enum):
    PRIMARY_FORM1 = "primary_form1"
    PRIMARY_FORM2 = "primary_form2"
    DERIVED = "derived"

    @property
    def primary(self) -> bool:
        return self is not FindingKind.DERIVED


_KIND_ORDER = {kind: i for i, kind in enumerate(FindingKind)}


@dataclass(frozen=True)
class AnomalyFinding(SerializableMixin):
    """One violated norm: who, what and when, with the rule that detected it."""

    type_id = "finding"

    kind: FindingKind
    property: Term
    agent: Constant
    time: TimePoint
    violated_rule: str

    def sort_key(self) -> tuple:
        return (
            _KIND_ORDER[self.kind],
            self.time.value,
            str(self.agent),
            str(self.property),
            self.violated_rule,
        )

    @property
    def key(self) -> tuple:
        return (self.kind, self.property, self.agent, self.time, self.violated_rule)

    def sentence(self) -> str:
        """The cause of the accident, in words."""
        if self.kind is FindingKind.PRIMARY_FORM1:
            return f"{self.agent} did not {self.property} at time {self.time} although obliged and able."
        if self.kind is FindingKind.PRIMARY_FORM2:
            factor = self.property.arg if isinstance(self.property, Combine) else self.property
            return f"{self.agent} was disrupted by an unforeseeable factor ({factor}) at time {self.time}."
        return (
            f"{self.agent} did not {self.property} at time {self.time} although obliged,"
            " but was unable to."
        )

    def to_object(self) -> dict:
        obj = super().to_object()
        obj.update(
            {
                "kind": self.kind.value,
                "property": str(self.property),
                "agent": str(self.agent),
                "time": self.time.value,
                "violated_rule": self.violated_rule,
            }
        )
        return obj


def _is_disruptive(lit: Literal) -> bool:
    return (
        lit.predicate is Predicate.HOLDS
        and lit.positive
        and isinstance(lit.args[0], Combine)
        and lit.args[0].prop == DISRUPTIVE_FACTOR
    )


def _from_program(m: Interpretation, program: GroundProgram) -> "Iterable[AnomalyFinding]":
    """Findings from the forward rules that fire in `m`."""
    for rule in program:
        if rule.origin is None or rule.origin.variant != FORWARD or rule.head not in m:
            continue
        if not all(lit in m for lit in rule.pos_body) or any(lit in m for lit in rule.naf_body):
            continue
        head, rule_id = rule.head, rule.origin.rule_id
        if head.predicate is Predicate.ANOMALY_INFO and head.positive:
            yield AnomalyFinding(FindingKind.PRIMARY_FORM1, *head.args, rule_id)
        elif head.predicate is Predicate.P_ANOMALY and head.positive:
            for lit in rule.pos_body:
                if _is_disruptive(lit):
                    yield AnomalyFinding(FindingKind.PRIMARY_FORM2, *lit.args, rule_id)
        elif head.predicate is Predicate.D_ANOMALY and head.positive:
            for lit in rule.pos_body:
                if lit.predicate is Predicate.MUST and lit.positive:
                    yield AnomalyFinding(FindingKind.DERIVED, *lit.args, rule_id)


def _from_model(m: Interpretation) -> "Iterable[AnomalyFinding]":
    """Findings read off the witnesses in `m`, credited to the built-in rule ids."""
    p_anomaly = literal(Predicate.P_ANOMALY) in m
    d_anomaly = literal(Predicate.D_ANOMALY) in m
    holds = [lit for lit in m if lit.predicate is Predicate.HOLDS and lit.positive]
    for lit in m:
        if lit.predicate is Predicate.ANOMALY_INFO and lit.positive:
            yield AnomalyFinding(FindingKind.PRIMARY_FORM1, *lit.args, "r_panom1")
        elif p_anomaly and _is_disruptive(lit):
            yield AnomalyFinding(FindingKind.PRIMARY_FORM2, *lit.args, "r_panom2")
        elif d_anomaly and lit.predicate is Predicate.MUST and lit.positive:
            prop, agent, time = lit.args
            if literal(Predicate.ABLE, prop, agent, time, positive=False) not in m:
                continue
            violated = any(
                other.args[1] == agent
                and other.args[2] == TimePoint(time.value + 1)
                and literal(Predicate.INCOMPATIBLE, prop, other.args[0]) in m
                for other in holds
            )
            if violated:
                yield AnomalyFinding(FindingKind.DERIVED, prop, agent, time, "r_danom")


def witnessed(finding: AnomalyFinding, m: Interpretation) -> bool:
    """Whether the literals of `m` support `finding` on their own."""
    args = (finding.property, finding.agent, finding.time)
    if finding.kind is FindingKind.PRIMARY_FORM1:
        return literal(Predicate.ANOMALY_INFO, *args) in m
    if finding.kind is FindingKind.PRIMARY_FORM2:
        return literal(Predicate.P_ANOMALY) in m and literal(Predicate.HOLDS, *args) in m
    return literal(Predicate.D_ANOMALY) in m and literal(Predicate.MUST, *args) in m


def extract_findings(m: Interpretation, program: Optional[GroundProgram] = None) -> "list[AnomalyFinding]":
    """Every anomaly witnessed in the stable model `m`, sorted.

    With the ground program, each finding names the rule instance that fired.
    """
    found = _from_program(m, program) if program is not None else _from_model(m)
    unique = {finding.key: finding for finding in found}
    return sorted(unique.values(), key=AnomalyFinding.sort_key)


def cause_sentence(findings: "list[AnomalyFinding]") -> str:
    """Describe the earliest primary finding, else the earliest derived one."""
    primary = [f for f in findings if f.kind.primary]
    chosen = primary or [f for f in findings if not f.kind.primary]
    if not chosen:
        return "no anomaly found"
    return min(chosen, key=lambda f: (f.time.value, f.sort_key())).sentence()
