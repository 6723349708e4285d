"""Instantiate a logic program over the finite domains of one case."""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence

from loguru import logger

from normengine.dsl.parser import parse_ground_rules
from normengine.dsl.rules import CaseFile, KnowledgeBase
from normengine.errors import OutOfRangeError, SortError
from normengine.logic import (
    Combine,
    Constant,
    Literal,
    Neg,
    Sort,
    Substitution,
    Term,
    TimePoint,
    apply,
    complement,
    literal_key,
    negate,
    resolve_sort,
    unify,
    variable_sorts,
)

from .translate import LogicProgram, LpRule, Origin

# Sorts a single constant may be used at together.
_COMPATIBLE = [{Sort.AGENT, Sort.ENTITY}]
# Digit-named constants at these sorts clash with the time point of the same value.
_NAMED = {Sort.AGENT, Sort.ENTITY}


@dataclass(frozen=True)
class DomainSignature:
    """The finite domains a case is grounded over."""

    agents: "tuple[Constant, ...]"
    max_time: int
    properties: "tuple[Term, ...]" = ()
    actions: "tuple[Constant, ...]" = ()
    objects: "tuple[Constant, ...]" = ()

    def __post_init__(self) -> None:
        if self.max_time < 1:
            raise ValueError("Times start at 1.")

    @property
    def times(self) -> "tuple[TimePoint, ...]":
        return tuple(TimePoint(t) for t in range(1, self.max_time + 1))

    @property
    def entities(self) -> "tuple[Constant, ...]":
        return self.agents + tuple(o for o in self.objects if o not in self.agents)

    def domain(self, sort: Sort) -> "tuple[Term, ...]":
        if sort is Sort.AGENT:
            return self.agents
        if sort is Sort.ENTITY:
            return self.entities
        if sort is Sort.TIME:
            return self.times
        if sort is Sort.PROPERTY:
            return self.properties
        if sort is Sort.ACTION:
            return self.actions
        return ()

    def contains(self, term: Term, sort: Sort) -> bool:
        if sort is Sort.TIME:
            return isinstance(term, TimePoint) and term.value <= self.max_time
        return term in self.domain(sort)


def _sorted_terms(terms: Iterable[Term]) -> "tuple[Term, ...]":
    return tuple(sorted(set(terms), key=str))


def _property_terms(lit: Literal) -> "Iterator[Term]":
    for arg, sort in zip(lit.args, lit.predicate.sorts):
        if sort is Sort.PROPERTY:
            yield arg


def collect_signature(kb: KnowledgeBase, case: CaseFile) -> DomainSignature:
    """Partition the constants of `kb` and `case` into sort domains.

    Composed properties whose argument is a variable in some rule, such as
    `combine(follows,V)`, are instantiated with the case's agents only. The
    property domain is closed under negation.

    Raises:
        SortError: if a constant is used at incompatible positions.
    """
    rule_literals = [lit for rule in kb.rules for lit in rule.literals()]
    ground_literals = list(kb.facts) + list(case.facts)
    used: "dict[str, set[Sort]]" = {}
    time_points = set(range(1, case.max_time + 1))
    for lit in rule_literals + ground_literals:
        if lit.predicate.linguistic:
            continue
        for term, sort in lit.constants():
            if isinstance(term, Constant):
                used.setdefault(term.name, set()).add(sort)
            elif isinstance(term, TimePoint):
                time_points.add(term.value)
    for name, sorts in sorted(used.items()):
        if name.isdigit() and sorts & _NAMED and int(name) in time_points:
            raise SortError(f"Constant '{name}' is used both as {_describe(sorts)} and as a time point.")
        if len(sorts) > 1 and sorts not in _COMPATIBLE:
            raise SortError(f"Constant '{name}' is used both as {_describe(sorts)}.")

    agents = list(case.agents)
    agents.extend(n for n, s in sorted(used.items()) if Sort.AGENT in s and n not in agents)
    agent_terms = tuple(Constant(a) for a in agents)
    objects = _sorted_terms(
        Constant(n) for n, s in used.items() if s == {Sort.ENTITY} and n not in agents
    )
    actions = _sorted_terms(Constant(n) for n, s in used.items() if Sort.ACTION in s)

    properties = set()
    for lit in rule_literals + ground_literals:
        for term in _property_terms(lit):
            if isinstance(term, Neg):
                term = term.prop
            if isinstance(term, Constant):
                properties.add(term)
            elif isinstance(term, Combine) and isinstance(term.prop, Constant):
                properties.add(term.prop)
                if isinstance(term.arg, Constant):
                    properties.add(term)
                else:
                    properties.update(Combine(term.prop, agent) for agent in agent_terms)
    properties.update([negate(p) for p in properties])

    max_time = max(
        [case.max_time]
        + [t.value for lit in ground_literals for t, s in lit.constants() if s is Sort.TIME]
    )
    sig = DomainSignature(
        agents=agent_terms,
        max_time=max_time,
        properties=_sorted_terms(properties),
        actions=actions,
        objects=objects,
    )
    logger.debug(
        "Signature: {} agents, {} times, {} properties, {} actions, {} objects.",
        len(sig.agents),
        sig.max_time,
        len(sig.properties),
        len(sig.actions),
        len(sig.objects),
    )
    return sig


def _describe(sorts: "set[Sort]") -> str:
    return " and as ".join(sorted(f"{s.value}" for s in sorts))


class AtomTable:
    """A bijection between the classical literals of a ground program and dense ids.

    Ids follow the lexicographic order of the literals' text.
    """

    def __init__(self, literals: Iterable[Literal]) -> None:
        self._literals: "tuple[Literal, ...]" = tuple(sorted(set(literals), key=literal_key))
        self._ids: "dict[Literal, int]" = {lit: i for i, lit in enumerate(self._literals)}

    def __len__(self) -> int:
        return len(self._literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self._literals)

    def __contains__(self, lit: Literal) -> bool:
        return lit in self._ids

    def id_of(self, lit: Literal) -> int:
        return self._ids[lit]

    def literal(self, atom_id: int) -> Literal:
        return self._literals[atom_id]

    def complement_id(self, atom_id: int) -> Optional[int]:
        """The id of the complementary literal, if it occurs in the program."""
        return self._ids.get(complement(self._literals[atom_id]))


@dataclass(frozen=True)
class GroundProgram:
    rules: "tuple[LpRule, ...]" = ()
    atom_table: AtomTable = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.atom_table is None:
            table = AtomTable(lit for rule in self.rules for lit in rule.literals())
            object.__setattr__(self, "atom_table", table)

    def __iter__(self) -> Iterator[LpRule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    @classmethod
    def of(cls, rules: Iterable[LpRule]) -> "GroundProgram":
        """Deduplicate `rules` and put them in canonical order."""
        unique: "dict[tuple, LpRule]" = {}
        for rule in sorted(map(_canonical_rule, rules), key=_canonical_key):
            unique.setdefault((rule.head, rule.pos_body, rule.naf_body), rule)
        return cls(tuple(unique.values()))


def _canonical_rule(rule: LpRule) -> LpRule:
    return LpRule(
        rule.head,
        tuple(sorted(set(rule.pos_body), key=literal_key)),
        tuple(sorted(set(rule.naf_body), key=literal_key)),
        rule.origin,
    )


def _canonical_key(rule: LpRule) -> "tuple[str, str]":
    return rule.text(sort_body=True), str(rule.origin or "")


def _rule_variables(rule: LpRule) -> "Optional[dict[str, Sort]]":
    sorts = {}
    for name, found in variable_sorts(*rule.literals()).items():
        sort = resolve_sort(found)
        if sort is None:
            return None
        sorts[name] = sort
    return sorts


def _instantiate(rule: LpRule, subst: Mapping[str, Term], sig: DomainSignature) -> Optional[LpRule]:
    """Apply `subst`, dropping instances whose times leave 1..max_time."""
    try:
        head = apply(subst, rule.head)
        pos = tuple(apply(subst, lit) for lit in rule.pos_body)
        naf = tuple(apply(subst, lit) for lit in rule.naf_body)
    except OutOfRangeError:
        return None
    for lit in (head,) + pos + naf:
        for term, sort in lit.constants():
            if sort is Sort.TIME and term.value > sig.max_time:
                return None
    try:
        return LpRule(head, pos, naf, rule.origin)
    except ValueError:
        logger.warning("Dropping self-blocking instance of {}.", rule.origin)
        return None


def _in_domains(subst: Mapping[str, Term], sorts: "dict[str, Sort]", sig: DomainSignature) -> bool:
    return all(sig.contains(subst[name], sort) for name, sort in sorts.items() if name in subst)


def _complete(
    subst: Mapping[str, Term], sorts: "dict[str, Sort]", sig: DomainSignature
) -> "Iterator[dict[str, Term]]":
    """Extend `subst` over the domains of the variables it leaves free."""
    free = [name for name in sorted(sorts) if name not in subst]
    for values in product(*(sig.domain(sorts[name]) for name in free)):
        full = dict(subst)
        full.update(zip(free, values))
        yield full


def _ground_rule_naive(rule: LpRule, sig: DomainSignature) -> "Iterator[LpRule]":
    sorts = _rule_variables(rule)
    if sorts is None:
        logger.warning("Rule {} uses a variable at conflicting sorts; it has no instances.", rule.origin)
        return
    for subst in _complete({}, sorts, sig):
        instance = _instantiate(rule, subst, sig)
        if instance is not None:
            yield instance


class _Index:
    """Reachable ground literals, indexed by predicate and sign."""

    def __init__(self) -> None:
        self._by_key: "Dict[tuple, List[Literal]]" = {}
        self._all: "set[Literal]" = set()

    def __contains__(self, lit: Literal) -> bool:
        return lit in self._all

    def __len__(self) -> int:
        return len(self._all)

    def add(self, lit: Literal) -> bool:
        if lit in self._all:
            return False
        self._all.add(lit)
        self._by_key.setdefault((lit.predicate, lit.positive), []).append(lit)
        return True

    def candidates(self, lit: Literal) -> "Sequence[Literal]":
        return self._by_key.get((lit.predicate, lit.positive), ())


def _matches(
    body: "Sequence[Literal]", index: _Index, subst: Substitution
) -> "Iterator[Substitution]":
    """Every substitution mapping all of `body` into `index`."""
    if not body:
        yield subst
        return
    first, rest = body[0], body[1:]
    try:
        bound = apply(subst, first)
    except OutOfRangeError:
        return
    if bound.is_ground():
        if bound in index:
            yield from _matches(rest, index, subst)
        return
    for candidate in list(index.candidates(bound)):
        extended = unify(bound, candidate, subst)
        if extended is not None:
            yield from _matches(rest, index, extended)


def _ground_rule_relevant(
    rule: LpRule, sorts: "dict[str, Sort]", index: _Index, sig: DomainSignature
) -> "Iterator[LpRule]":
    for subst in _matches(rule.pos_body, index, Substitution()):
        bindings = dict(subst.bindings)
        if not _in_domains(bindings, sorts, sig):
            continue
        for full in _complete(bindings, sorts, sig):
            instance = _instantiate(rule, full, sig)
            if instance is not None:
                yield instance


def _ground_relevant(program: LogicProgram, sig: DomainSignature) -> "list[LpRule]":
    rules = []
    for rule in program:
        sorts = _rule_variables(rule)
        if sorts is None:
            logger.warning("Rule {} uses a variable at conflicting sorts; it has no instances.", rule.origin)
            continue
        rules.append((rule, sorts))

    index = _Index()
    instances: "dict[LpRule, None]" = {}
    rounds, changed = 0, True
    while changed:
        changed = False
        rounds += 1
        for rule, sorts in rules:
            for instance in _ground_rule_relevant(rule, sorts, index, sig):
                if instance not in instances:
                    instances[instance] = None
                if index.add(instance.head):
                    changed = True
    logger.debug("Relevance grounding reached a fixpoint after {} rounds.", rounds)
    return list(instances)


def ground(program: LogicProgram, sig: DomainSignature, relevant_only: bool = False) -> GroundProgram:
    """Instantiate every rule of `program` over the domains of `sig`.

    Each variable ranges over the domain of the sort its position implies.
    Instances whose time arithmetic leaves `1..sig.max_time` are dropped.
    With `relevant_only`, instances whose positive body can never be derived
    (even ignoring `not`) are left out; this does not change the stable models.
    """
    if relevant_only:
        instances = _ground_relevant(program, sig)
    else:
        instances = [inst for rule in program for inst in _ground_rule_naive(rule, sig)]
    gp = GroundProgram.of(instances)
    logger.debug("Ground program: {} rules over {} literals.", len(gp), len(gp.atom_table))
    return gp


def dump_ground(gp: GroundProgram) -> str:
    """Canonical text: one rule per line, its origin as a trailing comment."""
    lines = []
    for rule in gp:
        line = rule.text()
        if rule.origin is not None:
            line += f" % {rule.origin}"
        lines.append(line + "\n")
    return "".join(lines)


def load_ground(text: str, source: Optional[str] = None) -> GroundProgram:
    """Read a ground dump back into a `GroundProgram`."""
    rules = []
    for head, pos, naf, origin in parse_ground_rules(text, source):
        rules.append(LpRule(head, pos, naf, Origin.parse(origin) if origin else None))
    return GroundProgram.of(rules)
