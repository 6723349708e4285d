"""Compile implications and defaults into a normal logic program.

An implication `A1 & ... & An -> B` becomes the forward rule `B :- A1, ..., An.`
and one contrapositive per body literal, `-Ai :- -B, A1, ..., An` (without Ai).
A default `A : B [C]` becomes `B :- A, not -B, not -C.`; defaults get no
contrapositives.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from loguru import logger

from normengine.dsl.rules import (
    Implication,
    KnowledgeBase,
    NormalDefault,
    Rule,
    SemiNormalDefault,
    denied_conclusion,
)
from normengine.errors import ParseError
from normengine.logic import Literal, complement

FORWARD = "forward"
DEFAULT = "default"
FACT = "fact"
CONTRA = "contra"


@dataclass(frozen=True, order=True)
class Origin:
    """The source rule of a program rule, plus which of its translations it is."""

    rule_id: str
    variant: str

    def __str__(self) -> str:
        return f"{self.rule_id}/{self.variant}"

    @classmethod
    def parse(cls, text: str) -> "Origin":
        rule_id, _, variant = text.rpartition("/")
        if not rule_id:
            return cls(text, FORWARD)
        return cls(rule_id, variant)


@dataclass(frozen=True)
class LpRule:
    head: Literal
    pos_body: "tuple[Literal, ...]" = ()
    naf_body: "tuple[Literal, ...]" = ()
    origin: Optional[Origin] = None

    def __post_init__(self) -> None:
        if self.head in self.naf_body:
            raise ValueError(f"{self.head} occurs under 'not' in its own body.")

    def literals(self) -> "Iterator[Literal]":
        yield self.head
        yield from self.pos_body
        yield from self.naf_body

    def is_fact(self) -> bool:
        return not self.pos_body and not self.naf_body

    def is_ground(self) -> bool:
        return all(lit.is_ground() for lit in self.literals())

    def text(self, sort_body: bool = False) -> str:
        """The rule as `head :- pos, not naf.`, without its origin."""
        pos = [str(lit) for lit in self.pos_body]
        naf = [str(lit) for lit in self.naf_body]
        if sort_body:
            pos, naf = sorted(pos), sorted(naf)
        body = pos + [f"not {lit}" for lit in naf]
        if not body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(body)}."

    def __str__(self) -> str:
        if self.origin is None:
            return self.text()
        return f"{self.text()} % {self.origin}"


@dataclass(frozen=True)
class LogicProgram:
    rules: "tuple[LpRule, ...]" = ()

    def __iter__(self) -> Iterator[LpRule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __add__(self, other: "LogicProgram") -> "LogicProgram":
        return LogicProgram(self.rules + other.rules)

    def origins(self) -> "set[str]":
        return {rule.origin.rule_id for rule in self.rules if rule.origin is not None}


def _rule_id(rule: Rule) -> str:
    return rule.id if rule.id is not None else FACT


def translate_implication(rule: Implication) -> "list[LpRule]":
    """The forward rule followed by the contrapositive of each body literal."""
    rule_id = _rule_id(rule)
    if rule.is_fact:
        return [LpRule(rule.head, origin=Origin(rule_id, FACT))]
    rules = [LpRule(rule.head, tuple(rule.body), origin=Origin(rule_id, FORWARD))]
    for i, lit in enumerate(rule.body):
        rest = rule.body[:i] + rule.body[i + 1 :]
        rules.append(
            LpRule(
                complement(lit),
                (complement(rule.head),) + tuple(rest),
                origin=Origin(rule_id, f"{CONTRA}{i + 1}"),
            )
        )
    return rules


def translate_normal_default(rule: NormalDefault) -> LpRule:
    return LpRule(
        rule.conc,
        tuple(rule.pre),
        (complement(rule.conc),),
        origin=Origin(rule.id, DEFAULT),
    )


def translate_semi_normal_default(rule: SemiNormalDefault) -> LpRule:
    """`conc :- pre, not -conc, not -c` for every constraint literal `c`."""
    denial = denied_conclusion(rule)
    if denial is not None:
        raise ParseError(f"Rule {rule.id}: the constraint {denial} denies the conclusion, so the default can never apply.")
    naf = [complement(rule.conc)]
    naf.extend(complement(c) for c in rule.constraint if complement(c) not in naf)
    return LpRule(rule.conc, tuple(rule.pre), tuple(naf), origin=Origin(rule.id, DEFAULT))


def translate_rule(rule: Rule) -> "list[LpRule]":
    if isinstance(rule, Implication):
        return translate_implication(rule)
    if isinstance(rule, SemiNormalDefault):
        return [translate_semi_normal_default(rule)]
    if isinstance(rule, NormalDefault):
        return [translate_normal_default(rule)]
    raise TypeError(f"Not a rule: {rule!r}")


def translate_facts(facts: Iterable[Literal], source: str = "kb") -> LogicProgram:
    """Bodyless rules for ground facts, tagged `<source>/fact`."""
    return LogicProgram(tuple(LpRule(fact, origin=Origin(source, FACT)) for fact in facts))


def translate_kb(kb: KnowledgeBase) -> LogicProgram:
    """Translate every rule of `kb`, followed by its static facts."""
    rules: "list[LpRule]" = []
    for rule in kb.rules:
        rules.extend(translate_rule(rule))
    program = LogicProgram(tuple(rules)) + translate_facts(kb.facts)
    logger.debug("Translated {} rules and {} facts into {} program rules.", len(kb.rules), len(kb.facts), len(program))
    return program


def dump_program(program: LogicProgram) -> str:
    """One rule per line, in translation order, each followed by its origin."""
    return "".join(f"{rule}\n" for rule in program)
