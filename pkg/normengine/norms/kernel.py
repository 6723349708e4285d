"""The built-in road knowledge base and its kernel predicates."""

import re
from dataclasses import dataclass
from functools import lru_cache

from loguru import logger

from normengine.dsl import Implication, KnowledgeBase, parse_kb
from normengine.logic import Predicate, Term, Variable, literal
from normengine.util.constants import BUILTIN_KB_ID
from normengine.util.paths import resolve_kb

ABLE_ONLYIF_PREFIX = "r_able_onlyif_"


@dataclass(frozen=True)
class KernelPredicate:
    name: str
    description: str


_KERNEL = (
    KernelPredicate("stop", "The agent is stopped."),
    KernelPredicate("run_slowly_enough", "The agent drives slowly enough to stop in time."),
    KernelPredicate("control", "The agent controls its vehicle."),
    KernelPredicate("move_back", "The agent moves backwards."),
    KernelPredicate("disruptive_factor", "An unforeseeable factor, such as gravel or oil, disrupts the agent."),
)


def kernel_predicates() -> "tuple[KernelPredicate, ...]":
    """The semantic predicates in which anomalies are expressed."""
    return _KERNEL


def _rule_suffix(term) -> str:
    return re.sub(r"\W+", "_", str(term)).strip("_")


def close_ability(kb: KnowledgeBase) -> KnowledgeBase:
    """Add the converse of `r_able_if` for every effect in the pcb database.

    For an effect E caused by actions Act1..Actn this is
    `-available(Act1,E,A,T) & ... & -available(Actn,E,A,T) -> -able(E,A,T)`.
    Earlier `r_able_onlyif_*` rules are replaced.
    """
    kb = kb.without(lambda rule: (rule.id or "").startswith(ABLE_ONLYIF_PREFIX))
    causes: "dict[Term, list[Term]]" = {}
    for fact in kb.facts:
        if fact.predicate is Predicate.PCB and fact.positive:
            act, effect = fact.args
            causes.setdefault(effect, []).append(act)
    agent, time = Variable("A"), Variable("T")
    rules = []
    for effect in sorted(causes, key=str):
        acts = sorted(set(causes[effect]), key=str)
        body = tuple(
            literal(Predicate.AVAILABLE, act, effect, agent, time, positive=False) for act in acts
        )
        head = literal(Predicate.ABLE, effect, agent, time, positive=False)
        rules.append(Implication(body, head, ABLE_ONLYIF_PREFIX + _rule_suffix(effect)))
    logger.debug("Closed ability over {} effects.", len(rules))
    return kb.add(rules)


@lru_cache(maxsize=None)
def builtin_kb() -> KnowledgeBase:
    """The road-domain norms, closed under `close_ability`."""
    source, text = resolve_kb(BUILTIN_KB_ID)
    return close_ability(parse_kb(text, source=source))
