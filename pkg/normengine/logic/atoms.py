"""Predicates, atoms and the two kinds of negated literal."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .terms import Sort, Term, fits_sort, is_ground, term_constants, term_variables

P, A, T = Sort.PROPERTY, Sort.AGENT, Sort.TIME
W = Sort.WORD


class Predicate(Enum):
    """Every predicate the engine knows, with its fixed argument sorts."""

    HOLDS = ("holds", (P, A, T))
    MUST = ("must", (P, A, T))
    ABLE = ("able", (P, A, T))
    INCOMPATIBLE = ("incompatible", (P, P))
    ACTION = ("action", (Sort.ACTION,))
    PCB = ("pcb", (Sort.ACTION, P))
    AVAILABLE = ("available", (Sort.ACTION, P, A, T))
    P_ANOMALY = ("p_anomaly", ())
    D_ANOMALY = ("d_anomaly", ())
    ANOMALY_INFO = ("anomaly_info", (P, A, T))
    SUBJECT = ("subject", (W, W))
    OBJECT = ("object", (W, W))
    COMPL_V = ("compl_v", (W, W, W))
    QUALIF = ("qualif", (W, W))
    QUALIF_N = ("qualif_n", (W, W))

    def __init__(self, text: str, sorts: "tuple[Sort, ...]") -> None:
        self.text = text
        self.sorts = sorts

    @property
    def arity(self) -> int:
        return len(self.sorts)

    @property
    def linguistic(self) -> bool:
        return bool(self.sorts) and all(sort is Sort.WORD for sort in self.sorts)

    @classmethod
    def by_name(cls, name: str) -> "Predicate":
        """Look up a predicate by its DSL name. Raises `KeyError` if unknown."""
        return _BY_NAME[name]


_BY_NAME = {predicate.text: predicate for predicate in Predicate}

LINGUISTIC_PREDICATES = frozenset(p for p in Predicate if p.linguistic)


@dataclass(frozen=True)
class Atom:
    predicate: Predicate
    args: "tuple[Term, ...]" = ()

    def __post_init__(self) -> None:
        if len(self.args) != self.predicate.arity:
            raise ValueError(
                f"{self.predicate.text} takes {self.predicate.arity} arguments, got {len(self.args)}."
            )
        for arg, sort in zip(self.args, self.predicate.sorts):
            if not fits_sort(arg, sort):
                raise ValueError(
                    f"Argument {arg} of {self.predicate.text} must be {sort.value}-sorted."
                )

    def __str__(self) -> str:
        if not self.args:
            return self.predicate.text
        return f"{self.predicate.text}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Literal:
    """An atom under classical negation (`positive=False` is ¬)."""

    atom: Atom
    positive: bool = True

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"-{self.atom}"

    @property
    def predicate(self) -> Predicate:
        return self.atom.predicate

    @property
    def args(self) -> "tuple[Term, ...]":
        return self.atom.args

    def is_ground(self) -> bool:
        return all(is_ground(arg) for arg in self.atom.args)

    def variables(self) -> "Iterator[tuple[str, Sort]]":
        """Yield `(name, sort)` for every variable occurrence."""
        for arg, sort in zip(self.atom.args, self.atom.predicate.sorts):
            yield from term_variables(arg, sort)

    def constants(self) -> "Iterator[tuple[Term, Sort]]":
        for arg, sort in zip(self.atom.args, self.atom.predicate.sorts):
            yield from term_constants(arg, sort)


@dataclass(frozen=True)
class NafLiteral:
    """A body literal, possibly under negation as failure (`not`)."""

    literal: Literal
    naf: bool = False

    def __str__(self) -> str:
        return f"not {self.literal}" if self.naf else str(self.literal)


def complement(literal: Literal) -> Literal:
    """Flip the classical sign."""
    return Literal(literal.atom, not literal.positive)


def literal(predicate: Predicate, *args: Term, positive: bool = True) -> Literal:
    """Shorthand constructor."""
    return Literal(Atom(predicate, tuple(args)), positive)


def literal_key(lit: Literal) -> str:
    """Canonical sort key: the literal's text."""
    return str(lit)


def variable_sorts(*literals: Literal) -> "dict[str, set[Sort]]":
    """Collect the sorts at which each variable occurs across `literals`."""
    sorts: "dict[str, set[Sort]]" = {}
    for lit in literals:
        for name, sort in lit.variables():
            sorts.setdefault(name, set()).add(sort)
    return sorts


def resolve_sort(sorts: "set[Sort]") -> "Sort | None":
    """Reduce a variable's occurrence sorts to one, or `None` on a clash.

    Agents are entities, so {agent, entity} resolves to agent.
    """
    if sorts == {Sort.AGENT, Sort.ENTITY}:
        return Sort.AGENT
    if len(sorts) == 1:
        return next(iter(sorts))
    return None


