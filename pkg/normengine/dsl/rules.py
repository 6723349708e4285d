"""Rule shapes, knowledge bases and case files."""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from normengine.errors import ParseError
from normengine.logic import Literal, Sort, complement
from normengine.logic.atoms import resolve_sort, variable_sorts


@dataclass(frozen=True)
class Implication:
    """`body -> head`. With an empty body this is a fact."""

    body: "tuple[Literal, ...]"
    head: Literal
    id: Optional[str] = None

    @property
    def is_fact(self) -> bool:
        return not self.body

    def literals(self) -> "Iterator[Literal]":
        yield from self.body
        yield self.head


@dataclass(frozen=True)
class NormalDefault:
    """`pre : conc`: conclude `conc` from `pre` unless its complement is derivable."""

    pre: "tuple[Literal, ...]"
    conc: Literal
    id: str

    def literals(self) -> "Iterator[Literal]":
        yield from self.pre
        yield self.conc


@dataclass(frozen=True)
class SemiNormalDefault:
    """`pre : conc [constraint]`: as a normal default, also blocked by ¬c for each c."""

    pre: "tuple[Literal, ...]"
    conc: Literal
    constraint: "tuple[Literal, ...]"
    id: str

    def literals(self) -> "Iterator[Literal]":
        yield from self.pre
        yield self.conc
        yield from self.constraint


Rule = Union[Implication, NormalDefault, SemiNormalDefault]
Default = Union[NormalDefault, SemiNormalDefault]


def unbound_head_variables(rule: Rule) -> "list[str]":
    """Head variables an implication's body never binds.

    Defaults are exempt: variables free in the conclusion or constraint range
    over their sort's domain.
    """
    if not isinstance(rule, Implication):
        return []
    bound = {name for lit in rule.body for name, _ in lit.variables()}
    return sorted({name for name, _ in rule.head.variables()} - bound)


def denied_conclusion(rule: Rule) -> Optional[Literal]:
    """The constraint literal of a semi-normal default that contradicts its own conclusion.

    Such a default blocks itself: `conc :- pre, not conc` has no stable reading.
    """
    if not isinstance(rule, SemiNormalDefault):
        return None
    denial = complement(rule.conc)
    return denial if denial in rule.constraint else None


@dataclass(frozen=True)
class KnowledgeBase:
    rules: "tuple[Rule, ...]" = ()
    facts: "tuple[Literal, ...]" = ()

    def __post_init__(self) -> None:
        seen = set()
        for rule in self.rules:
            if rule.id is None:
                continue
            if rule.id in seen:
                raise ParseError(f"Duplicate rule id '{rule.id}'.")
            seen.add(rule.id)

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def rule_ids(self) -> "list[str]":
        return [rule.id for rule in self.rules if rule.id is not None]

    def rule(self, rule_id: str) -> Rule:
        for rule in self.rules:
            if rule.id == rule_id:
                return rule
        raise KeyError(rule_id)

    def merge(self, *others: "KnowledgeBase") -> "KnowledgeBase":
        """Concatenate knowledge bases. Rule ids must stay unique."""
        rules, facts = list(self.rules), list(self.facts)
        for other in others:
            rules.extend(other.rules)
            facts.extend(f for f in other.facts if f not in facts)
        return KnowledgeBase(tuple(rules), tuple(facts))

    def without(self, predicate) -> "KnowledgeBase":
        """Drop the rules for which `predicate(rule)` is true."""
        return KnowledgeBase(tuple(r for r in self.rules if not predicate(r)), self.facts)

    def add(self, rules: Iterable[Rule] = (), facts: Iterable[Literal] = ()) -> "KnowledgeBase":
        return KnowledgeBase(self.rules + tuple(rules), self.facts + tuple(facts))


@dataclass(frozen=True)
class CaseFile:
    """The facts of one accident report, with its finite domains."""

    case_id: str
    agents: "tuple[str, ...]"
    max_time: int
    facts: "tuple[Literal, ...]" = ()
    expected: "Optional[tuple[Literal, ...]]" = None
    absent: "tuple[Literal, ...]" = ()
    warnings: "tuple[str, ...]" = field(default=(), compare=False)

    def with_facts(self, facts: Iterable[Literal], case_id: Optional[str] = None) -> "CaseFile":
        """A copy with `facts` appended (e.g. to test inhibition)."""
        return CaseFile(
            case_id=case_id or self.case_id,
            agents=self.agents,
            max_time=self.max_time,
            facts=self.facts + tuple(f for f in facts if f not in self.facts),
            expected=self.expected,
            absent=self.absent,
            warnings=self.warnings,
        )


@dataclass(frozen=True)
class LingCase:
    """Linguistic facts of one report, as produced by a syntactic analysis."""

    case_id: str
    facts: "tuple[Literal, ...]" = ()


def rule_sort_conflicts(rule: Rule) -> "list[str]":
    """Variables used at incompatible sorts within one rule."""
    return sorted(
        name
        for name, sorts in variable_sorts(*rule.literals()).items()
        if resolve_sort(sorts) is None and Sort.WORD not in sorts
    )
