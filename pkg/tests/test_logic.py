from itertools import product

import pytest

from normengine.dsl import parse_literal
from normengine.errors import OutOfRangeError
from normengine.logic import (
    Combine,
    Constant,
    Neg,
    Predicate,
    Substitution,
    TimeExpr,
    TimePoint,
    Variable,
    apply,
    complement,
    literal,
    negate,
    time_term,
    unify,
    variable_sorts,
)

L = parse_literal


def test_negate_normalizes_double_negation():
    stop = Constant("stop")
    assert negate(stop) == Neg(stop)
    assert negate(negate(stop)) == stop
    with pytest.raises(ValueError):
        Neg(Neg(stop))


def test_time_offsets_are_bounded():
    assert str(TimeExpr("T", -1)) == "T-1"
    with pytest.raises(ValueError):
        TimeExpr("T", 2)
    with pytest.raises(ValueError):
        TimePoint(0)


def test_unify_direct_match():
    subst = unify(L("holds(stop,V,T)"), L("holds(stop,a,1)"))
    assert dict(subst) == {"V": Constant("a"), "T": TimePoint(1)}


def test_unify_solves_time_arithmetic():
    subst = unify(L("holds(combine(follows,V),W,T-1)"), L("holds(combine(follows,a),b,1)"))
    assert dict(subst) == {"V": Constant("a"), "W": Constant("b"), "T": TimePoint(2)}


def test_unify_clash_is_absent():
    assert unify(L("holds(stop,a,1)"), L("holds(control,a,1)")) is None
    assert unify(L("holds(stop,a,1)"), L("-holds(stop,a,1)")) is None
    assert unify(L("holds(stop,a,T+1)"), L("holds(stop,a,1)")) is None


def test_unify_neg_variable_against_plain_property():
    subst = unify(L("holds(neg(P),a,1)"), L("holds(stop,a,1)"))
    assert subst["P"] == Neg(Constant("stop"))
    assert apply(subst, L("holds(neg(P),a,1)")) == L("holds(stop,a,1)")


def test_unify_time_expressions_over_different_variables():
    subst = unify(L("holds(stop,a,T+1)"), L("holds(stop,a,S)"))
    assert subst["S"] == TimeExpr("T", 1)
    assert unify(L("holds(stop,a,T+1)"), L("holds(stop,a,S-1)")) is None


def test_unify_extends_an_existing_substitution():
    within = Substitution({"V": Constant("b")})
    assert unify(L("holds(stop,V,T)"), L("holds(stop,a,1)"), within) is None
    extended = unify(L("holds(stop,V,T)"), L("holds(stop,b,1)"), within)
    assert extended["T"] == TimePoint(1)


def test_apply_time_arithmetic():
    assert apply({"T": TimePoint(2)}, L("holds(stop,b,T-1)")) == L("holds(stop,b,1)")
    with pytest.raises(OutOfRangeError):
        apply({"T": TimePoint(1)}, L("holds(stop,b,T-1)"))


def test_apply_empty_substitution_is_identity():
    ground_lit = L("holds(combine(bump,a),b,2)")
    assert apply({}, ground_lit) is ground_lit


def test_apply_is_idempotent():
    subst = unify(L("holds(combine(follows,V),W,T-1)"), L("holds(combine(follows,a),b,1)"))
    once = apply(subst, L("must(stop,W,T)"))
    assert apply(subst, once) == once == L("must(stop,b,2)")


def test_complement_is_an_involution():
    lit = L("holds(stop,b,2)")
    assert complement(lit) == L("-holds(stop,b,2)")
    assert complement(complement(lit)) == lit
    assert complement(L("must(stop,b,1)")) == L("-must(stop,b,1)")


def test_literal_arguments_respect_sorts():
    with pytest.raises(ValueError):
        literal(Predicate.HOLDS, Constant("stop"), Constant("a"), Constant("one"))
    with pytest.raises(ValueError):
        Combine(Constant("bump"), TimePoint(1))
    assert str(literal(Predicate.HOLDS, Variable("P"), Constant("a"), TimePoint(1))) == "holds(P,a,1)"


def test_quoted_constants_print_quoted():
    lit = L('object(heurter,"m\'")')
    assert lit.args[1] == Constant("m'")
    assert str(lit) == 'object(heurter,"m\'")'


STOP, A_, B_ = Constant("stop"), Constant("a"), Constant("b")
SMALL_PROPERTIES = [
    STOP,
    negate(STOP),
    Variable("X"),
    negate(Variable("X")),
    Variable("Y"),
    Combine(Constant("bump"), Variable("V")),
    Combine(Constant("bump"), A_),
]
SMALL_AGENTS = [A_, Variable("A")]
SMALL_TIMES = [TimePoint(1), Variable("T"), time_term("T", 1), time_term("T", -1), Variable("U")]
SMALL_LITERALS = [
    literal(Predicate.HOLDS, p, a, t) for p, a, t in product(SMALL_PROPERTIES, SMALL_AGENTS, SMALL_TIMES)
]
GROUND_VALUES = {
    "X": [STOP, negate(STOP), Constant("go"), Combine(Constant("bump"), A_)],
    "Y": [STOP, negate(STOP), Combine(Constant("bump"), B_)],
    "V": [A_, B_],
    "A": [A_, B_],
    "T": [TimePoint(1), TimePoint(2), TimePoint(3)],
    "U": [TimePoint(1), TimePoint(2), TimePoint(3)],
}


def _ground_substitutions(*lits):
    names = sorted(variable_sorts(*lits))
    for values in product(*(GROUND_VALUES[name] for name in names)):
        yield dict(zip(names, values))


def _apply_or_none(subst, lit):
    try:
        return apply(subst, lit)
    except OutOfRangeError:
        return None


def test_unifiers_make_both_sides_equal():
    unified = 0
    for a, b in product(SMALL_LITERALS, repeat=2):
        subst = unify(a, b)
        if subst is not None:
            unified += 1
            assert apply(subst, a) == apply(subst, b), (str(a), str(b), subst)
    assert unified > len(SMALL_LITERALS)


def test_unifiers_are_most_general():
    for a, b in product(SMALL_LITERALS, repeat=2):
        subst = unify(a, b)
        for ground_subst in _ground_substitutions(a, b):
            instance = _apply_or_none(ground_subst, a)
            if instance is None or instance != _apply_or_none(ground_subst, b):
                continue
            assert subst is not None, (str(a), str(b), ground_subst)
            assert _apply_or_none(ground_subst, apply(subst, a)) == instance, (str(a), str(b), ground_subst)


def test_unify_wide_time_gap_has_no_unifier():
    assert unify(L("holds(stop,a,T-1)"), L("holds(stop,a,U+1)")) is None
