"""Parse knowledge bases, cases, linguistic facts and ground dumps."""

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import PurePath
from typing import Any, Optional, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from normengine.errors import (
    ArityError,
    ParseError,
    TimeRangeError,
    UnboundVariableError,
)
from normengine.logic import (
    Atom,
    Combine,
    Constant,
    Literal,
    Predicate,
    Sort,
    TimePoint,
    Variable,
    negate,
    time_term,
)

from .grammar import GROUND, RULES
from .rules import (
    CaseFile,
    Implication,
    KnowledgeBase,
    LingCase,
    NormalDefault,
    SemiNormalDefault,
    denied_conclusion,
    unbound_head_variables,
)

_ESCAPE = re.compile(r"\\(.)")


@lru_cache(maxsize=None)
def _rules_parser() -> Lark:
    return Lark(
        RULES,
        start=["kb", "case", "single_literal"],
        parser="lalr",
        propagate_positions=True,
        maybe_placeholders=False,
    )


@lru_cache(maxsize=None)
def _ground_parser() -> Lark:
    return Lark(GROUND, start="ground", parser="lalr", maybe_placeholders=False)


@dataclass(frozen=True)
class _Positioned:
    kind: str
    value: Any
    line: int
    column: int


def _error(cls, message: str, where: Union[Token, Any]) -> ParseError:
    return cls(message, getattr(where, "line", None), getattr(where, "column", None))


class _Terms(Transformer):
    """Builds terms and literals. Integers stay tokens until their position is known."""

    def var(self, children):
        return Variable(str(children[0]))

    def _time(self, children, sign: int):
        var, amount = children
        offset = sign * int(amount)
        if offset not in (-1, 0, 1):
            raise _error(ParseError, f"Time offset {offset:+d} is outside -1..+1.", amount)
        return time_term(str(var), offset)

    def time_plus(self, children):
        return self._time(children, +1)

    def time_minus(self, children):
        return self._time(children, -1)

    def int(self, children):
        return children[0]

    def const(self, children):
        return Constant(str(children[0]))

    def string(self, children):
        return Constant(_ESCAPE.sub(r"\1", str(children[0])[1:-1]))

    def func(self, children):
        name, args = children[0], [_as_constant(arg) for arg in children[1:]]
        try:
            if name == "combine" and len(args) == 2:
                return Combine(*args)
            if name == "neg" and len(args) == 1:
                return negate(args[0])
        except ValueError as e:
            raise _error(ArityError, str(e), name) from e
        if name in ("combine", "neg"):
            raise _error(ArityError, f"Wrong number of arguments to {name}().", name)
        raise _error(ParseError, f"Unknown function symbol '{name}'.", name)

    def atom(self, children):
        name, args = children[0], children[1:]
        try:
            predicate = Predicate.by_name(str(name))
        except KeyError:
            raise _error(ParseError, f"Unknown predicate '{name}'.", name) from None
        if len(args) != predicate.arity:
            raise _error(
                ArityError,
                f"{predicate.text} takes {predicate.arity} arguments, got {len(args)}.",
                name,
            )
        converted = []
        for arg, sort in zip(args, predicate.sorts):
            if isinstance(arg, Token) and sort is Sort.TIME:
                if int(arg) < 1:
                    raise _error(TimeRangeError, f"Time points start at 1, got {arg}.", arg)
                arg = TimePoint(int(arg))
            converted.append(_as_constant(arg))
        try:
            return Atom(predicate, tuple(converted))
        except ValueError as e:
            raise _error(ArityError, str(e), name) from e

    def pos_literal(self, children):
        return Literal(children[0], True)

    def neg_literal(self, children):
        return Literal(children[0], False)

    def conj(self, children):
        return tuple(children)

    def single_literal(self, children):
        return children[0]


def _as_constant(arg):
    if isinstance(arg, Token):
        return Constant(str(arg))
    return arg


def _require_ground(lit: Literal, meta, what: str) -> None:
    if not lit.is_ground():
        names = ", ".join(sorted({name for name, _ in lit.variables()}))
        raise UnboundVariableError(
            f"{what} must be ground, but {lit} has variables {names}.",
            meta.line,
            meta.column,
        )


class _Builder(_Terms):
    """Builds knowledge bases and case files."""

    def constraint(self, children):
        return children[0] if children else ()

    def implication(self, children):
        body, head = children
        return lambda id: Implication(body, head, id)

    def default(self, children):
        pre, conc = children[0], children[1]
        if len(children) == 3:
            constraint = children[2]
            return lambda id: SemiNormalDefault(pre, conc, constraint, id)
        return lambda id: NormalDefault(pre, conc, id)

    def labelled_fact(self, children):
        head = children[0]
        return lambda id: Implication((), head, id)

    @v_args(meta=True)
    def labelled(self, meta, children):
        label, build = children
        rule = build(str(label))
        if isinstance(rule, Implication) and rule.is_fact:
            _require_ground(rule.head, meta, "A fact")
        unbound = unbound_head_variables(rule)
        if unbound:
            raise UnboundVariableError(
                f"Rule {label}: head variables {', '.join(unbound)} do not occur in the body.",
                meta.line,
                meta.column,
            )
        denial = denied_conclusion(rule)
        if denial is not None:
            raise ParseError(
                f"Rule {label}: the constraint {denial} denies the conclusion, so the default can never apply.",
                meta.line,
                meta.column,
            )
        return _Positioned("rule", rule, meta.line, meta.column)

    @v_args(meta=True)
    def fact(self, meta, children):
        _require_ground(children[0], meta, "A fact")
        return _Positioned("fact", children[0], meta.line, meta.column)

    def kb(self, children):
        rules, facts, seen = [], [], set()
        for item in children:
            if item.kind == "fact":
                if item.value not in facts:
                    facts.append(item.value)
                continue
            if item.value.id in seen:
                raise ParseError(f"Duplicate rule id '{item.value.id}'.", item.line, item.column)
            seen.add(item.value.id)
            rules.append(item.value)
        return KnowledgeBase(tuple(rules), tuple(facts))

    # Case files.

    @v_args(meta=True)
    def case_id(self, meta, children):
        return _Positioned("case", str(children[0]), meta.line, meta.column)

    @v_args(meta=True)
    def agents(self, meta, children):
        return _Positioned("agents", tuple(str(c) for c in children), meta.line, meta.column)

    @v_args(meta=True)
    def times(self, meta, children):
        low, high = int(children[0]), int(children[1])
        if low != 1 or high < 1:
            raise TimeRangeError(
                f"Time intervals must be declared as 1..N, got {low}..{high}.",
                meta.line,
                meta.column,
            )
        return _Positioned("times", high, meta.line, meta.column)

    @v_args(meta=True)
    def expected(self, meta, children):
        for lit in children:
            _require_ground(lit, meta, "An expected literal")
        return _Positioned("expected", tuple(children), meta.line, meta.column)

    @v_args(meta=True)
    def absent(self, meta, children):
        for lit in children:
            _require_ground(lit, meta, "An absent literal")
        return _Positioned("absent", tuple(children), meta.line, meta.column)

    @v_args(meta=True)
    def case_fact(self, meta, children):
        _require_ground(children[0], meta, "A case fact")
        return _Positioned("fact", children[0], meta.line, meta.column)

    def case(self, children):
        return list(children)


def _transform(tree, transformer: Transformer):
    try:
        return transformer.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ParseError):
            raise e.orig_exc from None
        raise


def _syntax_message(e: UnexpectedInput) -> str:
    token = getattr(e, "token", None)
    if token is not None and token.type == "$END":
        return "Unexpected end of input."
    found = token or getattr(e, "char", None)
    return f"Syntax error at {str(found)!r}." if found else "Syntax error."


def _parse(text: str, start: str, source: Optional[str]):
    try:
        tree = _rules_parser().parse(text, start=start)
        return _transform(tree, _Builder())
    except UnexpectedEOF:
        raise ParseError("Unexpected end of input.", source=source) from None
    except UnexpectedInput as e:
        raise ParseError(_syntax_message(e), e.line, e.column, source) from None
    except ParseError as e:
        if e.source is None:
            e.source = source
        raise


def _default_case_id(source: Optional[str]) -> str:
    if source in (None, "-", "<stdin>"):
        return "case"
    return PurePath(source).stem


def _time_points(lit: Literal) -> "list[int]":
    return [c.value for c, sort in lit.constants() if sort is Sort.TIME]


def _agent_names(lit: Literal) -> "list[str]":
    return [c.name for c, sort in lit.constants() if sort is Sort.AGENT]


def parse_kb(text: str, source: Optional[str] = None) -> KnowledgeBase:
    """Parse a `.nkb` knowledge base.

    Raises:
        ParseError: on a syntax error (with line and column).
        ArityError: if a literal has the wrong arguments for its predicate.
        UnboundVariableError: if an implication head is not range-restricted.
    """
    return _parse(text, "kb", source)


def parse_literal(text: str) -> Literal:
    """Parse a single literal such as `holds(stop,S,T)`."""
    return _parse(text, "single_literal", None)


def _directives(items: "list[_Positioned]", allowed: "set[str]", source: Optional[str]):
    found: "dict[str, _Positioned]" = {}
    facts: "list[_Positioned]" = []
    for item in items:
        if item.kind == "fact":
            facts.append(item)
            continue
        if item.kind not in allowed:
            raise ParseError(f"#{item.kind} is not allowed here.", item.line, item.column, source)
        if item.kind in found:
            raise ParseError(f"Duplicate #{item.kind} directive.", item.line, item.column, source)
        found[item.kind] = item
    return found, facts


def parse_case(text: str, source: Optional[str] = None) -> CaseFile:
    """Parse a `.nc` case file.

    Agents used in facts but missing from `#agents` are added, with a warning.
    Without `#times`, the range is inferred from the facts, also with a warning.

    Raises:
        ParseError: on a syntax error or a misplaced directive.
        TimeRangeError: if a fact's time lies outside the declared range.
    """
    items = _parse(text, "case", source)
    found, fact_items = _directives(items, {"case", "agents", "times", "expected", "absent"}, source)
    warnings: "list[str]" = []
    facts: "list[Literal]" = []
    for item in fact_items:
        if item.value.predicate.linguistic:
            raise ParseError(
                f"Linguistic predicate {item.value.predicate.text} in a case file.",
                item.line,
                item.column,
                source,
            )
        if item.value not in facts:
            facts.append(item.value)

    agents = list(found["agents"].value) if "agents" in found else []
    for lit in facts:
        for name in _agent_names(lit):
            if name not in agents:
                agents.append(name)
                warnings.append(f"Agent '{name}' is not declared; added to the domain.")

    if "times" in found:
        max_time = found["times"].value
        for item in fact_items:
            for point in _time_points(item.value):
                if point > max_time:
                    raise TimeRangeError(
                        f"{item.value} lies outside the declared times 1..{max_time}.",
                        item.line,
                        item.column,
                        source,
                    )
    else:
        max_time = max((p for lit in facts for p in _time_points(lit)), default=1)
        warnings.append(f"No #times directive; using 1..{max_time}.")

    return CaseFile(
        case_id=found["case"].value if "case" in found else _default_case_id(source),
        agents=tuple(agents),
        max_time=max_time,
        facts=tuple(facts),
        expected=found["expected"].value if "expected" in found else None,
        absent=found["absent"].value if "absent" in found else (),
        warnings=tuple(warnings),
    )


def parse_lingfacts(text: str, source: Optional[str] = None) -> LingCase:
    """Parse a `.lf` file: an optional `#case` directive and linguistic facts."""
    items = _parse(text, "case", source)
    found, fact_items = _directives(items, {"case"}, source)
    facts: "list[Literal]" = []
    for item in fact_items:
        if not item.value.predicate.linguistic:
            raise ParseError(
                f"Only linguistic predicates may appear in linguistic facts, got {item.value.predicate.text}.",
                item.line,
                item.column,
                source,
            )
        if item.value not in facts:
            facts.append(item.value)
    case_id = found["case"].value if "case" in found else _default_case_id(source)
    return LingCase(case_id, tuple(facts))


class _GroundBuilder(_Terms):
    def pos_item(self, children):
        return (False, children[0])

    def naf_item(self, children):
        return (True, children[0])

    def ground_body(self, children):
        return list(children)

    def ground_rule(self, children):
        head, body, origin = children[0], [], None
        for child in children[1:]:
            if isinstance(child, Token) and child.type == "ORIGIN":
                origin = child[1:].strip() or None
            else:
                body = child
        pos = tuple(lit for naf, lit in body if not naf)
        naf = tuple(lit for naf, lit in body if naf)
        return head, pos, naf, origin

    def ground(self, children):
        return list(children)


def parse_ground_rules(
    text: str, source: Optional[str] = None
) -> "list[tuple[Literal, tuple[Literal, ...], tuple[Literal, ...], Optional[str]]]":
    """Read the rules of a ground dump as `(head, pos_body, naf_body, origin)`."""
    try:
        return _transform(_ground_parser().parse(text), _GroundBuilder())
    except UnexpectedEOF:
        raise ParseError("Unexpected end of input.", source=source) from None
    except UnexpectedInput as e:
        raise ParseError("Syntax error in ground program.", e.line, e.column, source) from None
    except ParseError as e:
        if e.source is None:
            e.source = source
        raise
