"""Reified terms: constants, variables, composed and negated properties, time."""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

BARE_CONSTANT = re.compile(r"[a-zà-öø-ÿ]\w*\Z")
"""Constants matching this print without quotes."""

TIME_OFFSETS = (-1, 0, 1)


class Sort(Enum):
    """Argument sorts, inferred from position rather than declared."""

    PROPERTY = "property"
    AGENT = "agent"
    ENTITY = "entity"  # An agent or an object: the argument of `combine`.
    TIME = "time"
    ACTION = "action"
    WORD = "word"


@dataclass(frozen=True)
class Constant:
    name: str

    def __str__(self) -> str:
        if BARE_CONSTANT.match(self.name):
            return self.name
        escaped = self.name.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Combine:
    """The composed property `combine(prop, arg)`."""

    prop: "Term"
    arg: "Term"

    def __post_init__(self) -> None:
        if not is_property_shaped(self.prop):
            raise ValueError(f"combine() needs a property first, got {self.prop}.")
        if not isinstance(self.arg, (Constant, Variable)):
            raise ValueError(f"combine() needs an agent or object second, got {self.arg}.")

    def __str__(self) -> str:
        return f"combine({self.prop},{self.arg})"


@dataclass(frozen=True)
class Neg:
    """A negated property. Build it with `negate()` so that neg(neg(p)) = p."""

    prop: "Term"

    def __post_init__(self) -> None:
        if isinstance(self.prop, Neg):
            raise ValueError("Double negation must be normalized; use negate().")
        if not is_property_shaped(self.prop):
            raise ValueError(f"neg() wraps properties only, got {self.prop}.")

    def __str__(self) -> str:
        return f"neg({self.prop})"


@dataclass(frozen=True)
class TimeExpr:
    """`var + offset` in a time position. Offset zero is written as a plain Variable."""

    var: str
    offset: int

    def __post_init__(self) -> None:
        if self.offset not in TIME_OFFSETS or self.offset == 0:
            raise ValueError(f"Time offset must be -1 or +1, got {self.offset}.")

    def __str__(self) -> str:
        sign = "+" if self.offset > 0 else "-"
        return f"{self.var}{sign}{abs(self.offset)}"


@dataclass(frozen=True)
class TimePoint:
    value: int

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError(f"Time points start at 1, got {self.value}.")

    def __str__(self) -> str:
        return str(self.value)


Term = Union[Constant, Variable, Combine, Neg, TimeExpr, TimePoint]


def is_property_shaped(term: Term) -> bool:
    return isinstance(term, (Constant, Variable, Combine, Neg))


def negate(prop: Term) -> Term:
    """Return the negated property, normalizing neg(neg(p)) to p."""
    if isinstance(prop, Neg):
        return prop.prop
    return Neg(prop)


def time_term(var: str, offset: int) -> Term:
    """Build the term for `var + offset`; offset 0 is the variable itself."""
    if offset == 0:
        return Variable(var)
    return TimeExpr(var, offset)


def is_ground(term: Term) -> bool:
    if isinstance(term, (Variable, TimeExpr)):
        return False
    if isinstance(term, Combine):
        return is_ground(term.prop) and is_ground(term.arg)
    if isinstance(term, Neg):
        return is_ground(term.prop)
    return True


def term_variables(term: Term, sort: Sort) -> "Iterator[tuple[str, Sort]]":
    """Yield `(name, sort)` for every variable occurrence in `term` placed at `sort`."""
    if isinstance(term, Variable):
        yield term.name, sort
    elif isinstance(term, TimeExpr):
        yield term.var, Sort.TIME
    elif isinstance(term, Combine):
        yield from term_variables(term.prop, Sort.PROPERTY)
        yield from term_variables(term.arg, Sort.ENTITY)
    elif isinstance(term, Neg):
        yield from term_variables(term.prop, Sort.PROPERTY)


def term_constants(term: Term, sort: Sort) -> "Iterator[tuple[Term, Sort]]":
    """Yield `(constant_or_timepoint, sort)` for every ground leaf in `term` placed at `sort`."""
    if isinstance(term, (Constant, TimePoint)):
        yield term, sort
    elif isinstance(term, Combine):
        yield from term_constants(term.prop, Sort.PROPERTY)
        yield from term_constants(term.arg, Sort.ENTITY)
    elif isinstance(term, Neg):
        yield from term_constants(term.prop, Sort.PROPERTY)


def fits_sort(term: Term, sort: Sort) -> bool:
    """Whether `term` may occupy a position of the given sort (variables fit anywhere)."""
    if isinstance(term, Variable):
        return True
    if sort is Sort.TIME:
        return isinstance(term, (TimePoint, TimeExpr))
    if isinstance(term, (TimePoint, TimeExpr)):
        return False
    if sort is Sort.PROPERTY:
        return is_property_shaped(term)
    return isinstance(term, Constant)
