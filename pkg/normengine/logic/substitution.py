"""Substitutions, unification and application over reified literals."""

from types import MappingProxyType
from typing import Iterator, Mapping, Optional

from normengine.errors import OutOfRangeError

from .atoms import Atom, Literal
from .terms import (
    TIME_OFFSETS,
    Combine,
    Neg,
    Sort,
    Term,
    TimeExpr,
    TimePoint,
    Variable,
    fits_sort,
    negate,
    time_term,
)


class Substitution(Mapping):
    """An immutable mapping from variable names to terms.

    Bindings produced by `unify()` are kept resolved, so applying a
    substitution twice gives the same result as applying it once.
    """

    def __init__(self, bindings: Optional[Mapping[str, Term]] = None) -> None:
        self._bindings = MappingProxyType(dict(bindings or {}))

    @property
    def bindings(self) -> Mapping[str, Term]:
        return self._bindings

    def __getitem__(self, name: str) -> Term:
        return self._bindings[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}↦{v}" for k, v in sorted(self._bindings.items()))
        return f"{{{inner}}}"

    def bind(self, name: str, term: Term) -> "Substitution":
        """Return a new substitution with `name ↦ term`, re-resolving earlier bindings."""
        extended = {name: term}
        resolved = {
            k: _substitute(v, extended, check=False) for k, v in self._bindings.items()
        }
        resolved[name] = term
        return Substitution(resolved)


def _substitute(term: Term, bindings: Mapping[str, Term], check: bool = True) -> Term:
    if isinstance(term, Variable):
        return bindings.get(term.name, term)
    if isinstance(term, TimeExpr):
        bound = bindings.get(term.var)
        if bound is None:
            return term
        if isinstance(bound, TimePoint):
            value = bound.value + term.offset
            if value < 1:
                if check:
                    raise OutOfRangeError(f"{term} with {term.var}={bound} is before time 1.")
                return term
            return TimePoint(value)
        if isinstance(bound, Variable):
            return time_term(bound.name, term.offset)
        if isinstance(bound, TimeExpr) and bound.offset + term.offset in TIME_OFFSETS:
            return time_term(bound.var, bound.offset + term.offset)
        return term
    if isinstance(term, Combine):
        return Combine(_substitute(term.prop, bindings, check), _substitute(term.arg, bindings, check))
    if isinstance(term, Neg):
        return negate(_substitute(term.prop, bindings, check))
    return term


def apply(subst: Mapping[str, Term], lit: Literal) -> Literal:
    """Replace every bound variable in `lit`.

    Raises:
        OutOfRangeError: if time arithmetic yields a point before 1.
    """
    if not subst:
        return lit
    args = tuple(_substitute(arg, subst) for arg in lit.atom.args)
    return Literal(Atom(lit.atom.predicate, args), lit.positive)


def _occurs(name: str, term: Term) -> bool:
    if isinstance(term, Variable):
        return term.name == name
    if isinstance(term, TimeExpr):
        return term.var == name
    if isinstance(term, Combine):
        return _occurs(name, term.prop) or _occurs(name, term.arg)
    if isinstance(term, Neg):
        return _occurs(name, term.prop)
    return False


def _bind(name: str, term: Term, sort: Sort, subst: Substitution) -> Optional[Substitution]:
    if not fits_sort(term, sort) or _occurs(name, term):
        return None
    return subst.bind(name, term)


def _unify_terms(a: Term, b: Term, sort: Sort, subst: Substitution) -> Optional[Substitution]:
    try:
        a, b = _substitute(a, subst), _substitute(b, subst)
    except OutOfRangeError:
        return None
    if a == b:
        return subst
    if isinstance(a, Variable):
        return _bind(a.name, b, sort, subst)
    if isinstance(b, Variable):
        return _bind(b.name, a, sort, subst)
    if isinstance(a, TimePoint) and isinstance(b, TimeExpr):
        a, b = b, a
    if isinstance(a, TimeExpr):
        if isinstance(b, TimePoint):
            value = b.value - a.offset
            return subst.bind(a.var, TimePoint(value)) if value >= 1 else None
        if isinstance(b, TimeExpr) and a.var != b.var:
            shift = b.offset - a.offset
            if shift in TIME_OFFSETS:
                return subst.bind(a.var, time_term(b.var, shift))
        return None
    if isinstance(a, Combine) and isinstance(b, Combine):
        inner = _unify_terms(a.prop, b.prop, Sort.PROPERTY, subst)
        if inner is None:
            return None
        return _unify_terms(a.arg, b.arg, Sort.ENTITY, inner)
    if isinstance(a, Neg) and isinstance(b, Neg):
        return _unify_terms(a.prop, b.prop, Sort.PROPERTY, subst)
    if sort is Sort.PROPERTY and isinstance(a, Neg) != isinstance(b, Neg):
        # neg(X) against a plain property p: only X = neg(p) normalizes to p.
        negated, plain = (a, b) if isinstance(a, Neg) else (b, a)
        if not isinstance(negated.prop, Variable) or not fits_sort(plain, Sort.PROPERTY):
            return None
        return _bind(negated.prop.name, negate(plain), Sort.PROPERTY, subst)
    return None


def unify(a: Literal, b: Literal, within: Optional[Substitution] = None) -> Optional[Substitution]:
    """Return the most general unifier of `a` and `b` extending `within`, or `None`.

    Time expressions over two different variables unify only when their offsets
    differ by at most one: `T-1` against `U+1` has no representable unifier.
    """
    if a.positive != b.positive or a.atom.predicate is not b.atom.predicate:
        return None
    subst = within if within is not None else Substitution()
    for x, y, sort in zip(a.atom.args, b.atom.args, a.atom.predicate.sorts):
        subst = _unify_terms(x, y, sort, subst)
        if subst is None:
            return None
    return subst
