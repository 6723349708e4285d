"""Turn linguistic facts into semantic ones.

Two deterministic passes come first: time segmentation (a temporal
conjunction such as "quand" opens the next interval) and agent assignment
(the narrator's vehicle is `a`, other vehicles get fresh constants). Lexicon
patterns are then instantiated clause by clause.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from loguru import logger

from normengine.dsl.rules import CaseFile, LingCase, NormalDefault
from normengine.errors import NoVerbsError, OutOfRangeError
from normengine.logic import Constant, Literal, Predicate, Sort, TimePoint, apply

from .lexicon import Lexicon, LexiconEntry

TEMPORAL_CONJUNCTIONS = frozenset({"quand", "lorsque", "puis"})
FIRST_PERSON_POSSESSIVES = frozenset({"mon", "ma", "mes"})
FIRST_PERSON_CLITICS = frozenset({"m'", "me", "moi", "je", "j'"})
DEFAULT_VEHICLE_NOUNS = frozenset({"véhicule", "voiture", "camion", "moto"})
NARRATOR = Constant("a")
_FRESH = "bcdefghijklmnopqrstuvwxyz"

SUBJECT, OBJECT = "subject", "object"


def verb_lemma(word: str) -> str:
    """Strip the reflexive marker: `se_trouver` is the verb `trouver`."""
    for prefix in ("se_", "s_", "s'"):
        if word.startswith(prefix) and len(word) > len(prefix):
            return word[len(prefix) :]
    return word


def _words(lit: Literal) -> "list[str]":
    return [arg.name for arg in lit.args]


def _is_temporal(lit: Literal) -> bool:
    return lit.predicate is Predicate.COMPL_V and _words(lit)[0].lower() in TEMPORAL_CONJUNCTIONS


def _clause_verbs(lit: Literal) -> "list[str]":
    """The verbs a fact mentions, in textual order."""
    words = _words(lit)
    if lit.predicate in (Predicate.SUBJECT, Predicate.OBJECT, Predicate.QUALIF):
        return [verb_lemma(words[0])]
    if lit.predicate is Predicate.COMPL_V:
        if _is_temporal(lit):
            return [verb_lemma(words[1]), verb_lemma(words[2])]
        return [verb_lemma(words[1])]
    return []


def clause_verbs(facts: Iterable[Literal]) -> "list[str]":
    seen: "list[str]" = []
    for lit in facts:
        for verb in _clause_verbs(lit):
            if verb not in seen:
                seen.append(verb)
    return seen


def segment_times(facts: Sequence[Literal]) -> "dict[str, int]":
    """Number the interval of every verb, starting at 1.

    A temporal conjunction `compl_v(quand, V1, V2)` puts V2 one interval after
    V1. A verb governed by another through a plain complement shares its
    interval. Everything else stays at 1.

    Raises:
        NoVerbsError: if no fact mentions a verb.
    """
    verbs = clause_verbs(facts)
    if not verbs:
        raise NoVerbsError("The linguistic facts contain no verb.")
    later, same = [], []
    for lit in facts:
        if lit.predicate is not Predicate.COMPL_V:
            continue
        _, governor, governed = _words(lit)
        governor, governed = verb_lemma(governor), verb_lemma(governed)
        if _is_temporal(lit):
            later.append((governor, governed))
        elif governed in verbs:
            same.append((governor, governed))
    times = {verb: 1 for verb in verbs}
    for _ in range(len(verbs)):
        changed = False
        for governor, governed in later:
            if times[governed] < times[governor] + 1:
                times[governed] = times[governor] + 1
                changed = True
        for governor, governed in same:
            if times[governed] < times[governor]:
                times[governed] = times[governor]
                changed = True
        if not changed:
            break
    return times


@dataclass(frozen=True)
class AgentAssignment:
    """Which agent fills the subject and object role of each clause."""

    roles: "dict[tuple[str, str], Constant]" = field(default_factory=dict)
    narrator_nouns: "frozenset[str]" = frozenset()
    warnings: "tuple[str, ...]" = ()

    def agent(self, verb: str, role: str) -> Optional[Constant]:
        return self.roles.get((verb, role))

    @property
    def agents(self) -> "tuple[Constant, ...]":
        found: "list[Constant]" = []
        for agent in self.roles.values():
            if agent not in found:
                found.append(agent)
        return tuple(found)


def assign_agents(
    facts: Sequence[Literal], vehicle_nouns: Iterable[str] = DEFAULT_VEHICLE_NOUNS
) -> AgentAssignment:
    """Map clause participants to agent constants.

    A noun qualified by a first-person possessive ("Mon véhicule") is the
    narrator `a`, and so is a first-person clitic ("m'"). Within a clause that
    already has a first-person clitic, the noun is someone else. Every other
    vehicle mention gets the next fresh constant, in textual order.
    """
    vehicle_nouns = frozenset(vehicle_nouns)
    narrator_nouns = frozenset(
        _words(lit)[0]
        for lit in facts
        if lit.predicate is Predicate.QUALIF_N and _words(lit)[1].lower() in FIRST_PERSON_POSSESSIVES
    )
    participants = [lit for lit in facts if lit.predicate in (Predicate.SUBJECT, Predicate.OBJECT)]
    with_clitic = {
        verb_lemma(_words(lit)[0])
        for lit in participants
        if _words(lit)[1].lower() in FIRST_PERSON_CLITICS
    }
    roles: "dict[tuple[str, str], Constant]" = {}
    warnings: "list[str]" = []
    fresh = iter(_FRESH)
    for lit in participants:
        verb, word = verb_lemma(_words(lit)[0]), _words(lit)[1]
        role = SUBJECT if lit.predicate is Predicate.SUBJECT else OBJECT
        if word.lower() in FIRST_PERSON_CLITICS:
            agent = NARRATOR
        elif word in narrator_nouns and verb not in with_clitic:
            agent = NARRATOR
        elif word in vehicle_nouns or word in narrator_nouns:
            agent = Constant(next(fresh))
        else:
            warnings.append(f"Cannot assign an agent to '{word}' ({role} of {verb}).")
            continue
        roles[(verb, role)] = agent
    return AgentAssignment(roles, narrator_nouns, tuple(warnings))


@dataclass(frozen=True)
class Transformation:
    facts: "tuple[Literal, ...]"
    times: "dict[str, int]"
    agents: AgentAssignment
    warnings: "tuple[str, ...]" = ()
    defaults: "tuple[NormalDefault, ...]" = ()

    @property
    def max_time(self) -> int:
        points = [t.value for lit in self.facts for t, s in lit.constants() if s is Sort.TIME]
        return max([1] + list(self.times.values()) + points)

    def to_case(self, case_id: str) -> CaseFile:
        return CaseFile(
            case_id=case_id,
            agents=tuple(a.name for a in self.agents.agents),
            max_time=self.max_time,
            facts=self.facts,
            warnings=self.warnings,
        )


class _Builder:
    def __init__(self, lexicon: Lexicon, times: "dict[str, int]", agents: AgentAssignment):
        self.lexicon = lexicon
        self.times = times
        self.agents = agents
        self.facts: "list[Literal]" = []
        self.defaults: "list[NormalDefault]" = []
        self.warnings: "list[str]" = list(agents.warnings)

    def use(self, lemma: str, context: str, verb: str, source: Literal) -> None:
        entry = self.lexicon.lookup(lemma, context)
        if entry is None:
            self.warnings.append(f"No lexicon entry for '{lemma}' ({context}).")
            return
        if entry.maps_to is None:
            return
        produced = self._instantiate(entry, verb)
        if produced is None:
            return
        if entry.defeasible:
            rule = NormalDefault((source,), produced, f"lex_{len(self.defaults) + 1}")
            self.defaults.append(rule)
        elif produced not in self.facts:
            self.facts.append(produced)

    def _instantiate(self, entry: LexiconEntry, verb: str) -> Optional[Literal]:
        bindings = {"T": TimePoint(self.times[verb])}
        for variable, role in (("S", SUBJECT), ("O", OBJECT)):
            agent = self.agents.agent(verb, role)
            if agent is not None:
                bindings[variable] = agent
        try:
            result = apply(bindings, entry.maps_to)
        except OutOfRangeError as e:
            self.warnings.append(f"'{entry.lemma}' in clause '{verb}': {e.message}")
            return None
        if not result.is_ground():
            self.warnings.append(
                f"'{entry.lemma}' needs a {' and '.join(sorted(n for n, _ in result.variables()))}"
                f" role that clause '{verb}' does not have."
            )
            return None
        return result


def analyze(facts: Sequence[Literal], lexicon: Lexicon) -> Transformation:
    """Run time segmentation, agent assignment and the lexicon over `facts`."""
    times = segment_times(facts)
    agents = assign_agents(facts, lexicon.nouns or DEFAULT_VEHICLE_NOUNS)
    builder = _Builder(lexicon, times, agents)
    verbs = set(times)
    seen: "set[str]" = set()
    for lit in facts:
        for verb in _clause_verbs(lit):
            if verb not in seen:
                seen.add(verb)
                builder.use(verb, "verb", verb, lit)
        words = _words(lit)
        if lit.predicate is Predicate.QUALIF:
            builder.use(words[1], "qualif", verb_lemma(words[0]), lit)
        elif lit.predicate is Predicate.COMPL_V:
            preposition, governor, governed = words
            if _is_temporal(lit) or verb_lemma(governed) in verbs:
                continue
            builder.use(governed, f"compl_v:{preposition}", verb_lemma(governor), lit)
        elif lit.predicate is Predicate.QUALIF_N and words[1].lower() not in FIRST_PERSON_POSSESSIVES:
            builder.warnings.append(f"No lexicon entry for '{words[1]}' (qualif_n).")
    for warning in builder.warnings:
        logger.warning(warning)
    return Transformation(
        facts=tuple(builder.facts),
        times=times,
        agents=agents,
        warnings=tuple(builder.warnings),
        defaults=tuple(builder.defaults),
    )


def transform(facts: Sequence[Literal], lexicon: Lexicon) -> "list[Literal]":
    """The semantic facts the lexicon yields for `facts`; unmatched facts are dropped."""
    return list(analyze(facts, lexicon).facts)


def defeasible_defaults(facts: Sequence[Literal], lexicon: Lexicon) -> "list[NormalDefault]":
    """Defaults `lex_<n>: <linguistic fact> : <semantic literal>` for defeasible entries."""
    return list(analyze(facts, lexicon).defaults)


def lingcase_to_case(ling: LingCase, lexicon: Lexicon) -> "tuple[CaseFile, Transformation]":
    result = analyze(ling.facts, lexicon)
    return result.to_case(ling.case_id), result
