"""The reified term and literal representation shared by every other module."""

from .atoms import (
    LINGUISTIC_PREDICATES,
    Atom,
    Literal,
    NafLiteral,
    Predicate,
    complement,
    literal,
    literal_key,
    resolve_sort,
    variable_sorts,
)
from .substitution import Substitution, apply, unify
from .terms import (
    Combine,
    Constant,
    Neg,
    Sort,
    Term,
    TimeExpr,
    TimePoint,
    Variable,
    is_ground,
    negate,
    time_term,
)
