import random
import time
from itertools import combinations

import pytest

from normengine.dsl import parse_literal
from normengine.engine import (
    GroundProgram,
    Interpretation,
    LpRule,
    brute_force_solve,
    is_stable,
    least_model,
    reduct,
    solve_all,
)
from normengine.engine.solve import brave, cautious
from normengine.errors import SizeCapError
from normengine.logic import Constant, Predicate, TimePoint, literal

from conftest import ground_case

L = parse_literal
P, Q, R = L("holds(p,a,1)"), L("holds(q,a,1)"), L("holds(r,a,1)")
NOT_P = L("-holds(p,a,1)")


def program(*rules: LpRule) -> GroundProgram:
    return GroundProgram.of(rules)


def rule(head, pos=(), naf=()) -> LpRule:
    return LpRule(head, tuple(pos), tuple(naf))


def model(*literals) -> Interpretation:
    return Interpretation.of(literals)


EVEN_LOOP = program(rule(P, naf=[Q]), rule(Q, naf=[P]))


def test_reduct_keeps_unblocked_rules():
    p = program(rule(P, naf=[Q]))
    assert list(reduct(p, model(P))) == [rule(P)]
    assert len(reduct(p, model(Q))) == 0
    definite = program(rule(P), rule(Q, [P]))
    assert reduct(definite, model(P)) == definite


def test_least_model():
    assert least_model(program(rule(P), rule(Q, [P]))) == model(P, Q)
    assert least_model(program()) == model()
    assert not least_model(program(rule(P), rule(NOT_P))).consistent


def test_is_stable():
    assert is_stable(EVEN_LOOP, model(P))
    assert not is_stable(EVEN_LOOP, model(P, Q))
    assert is_stable(program(), model())


def test_even_loop_has_two_models():
    assert solve_all(EVEN_LOOP).model_sets() == {frozenset({P}), frozenset({Q})}


def test_contradiction_has_no_model():
    assert len(solve_all(program(rule(P), rule(NOT_P)))) == 0
    assert len(solve_all(program(rule(R), rule(P, [R]), rule(NOT_P, [R])))) == 0


def test_odd_loop_has_no_model():
    assert len(solve_all(program(rule(P, naf=[Q]), rule(Q, naf=[R]), rule(R, naf=[P])))) == 0


def test_empty_program_has_the_empty_model():
    result = solve_all(program())
    assert result.model_sets() == {frozenset()}
    assert result.exhausted
    assert brute_force_solve(program()).model_sets() == {frozenset()}


def test_model_cap():
    atoms = [literal(Predicate.HOLDS, Constant(f"p{i}"), Constant("a"), TimePoint(1)) for i in range(4)]
    rules = []
    for lit in atoms:
        other = lit.__class__(lit.atom, False)
        rules += [rule(lit, naf=[other]), rule(other, naf=[lit])]
    p = program(*rules)
    assert len(solve_all(p)) == 16
    capped = solve_all(p, cap=5)
    assert len(capped) == 5
    assert not capped.exhausted
    assert solve_all(p, cap=16).exhausted
    with pytest.raises(ValueError):
        solve_all(p, cap=0)


def test_brute_force_size_cap():
    heads = [literal(Predicate.HOLDS, Constant(f"p{i}"), Constant("a"), TimePoint(1)) for i in range(21)]
    with pytest.raises(SizeCapError):
        brute_force_solve(program(*(rule(h) for h in heads)))


def test_cautious_and_brave():
    models = solve_all(program(rule(R), *EVEN_LOOP.rules)).models
    assert cautious(models) == {R}
    assert brave(models) == {P, Q, R}
    assert cautious(()) == frozenset()


def test_worked_example_models_contain_p_anomaly(road_kb, worked_case):
    result = solve_all(ground_case(road_kb, worked_case))
    assert result.exhausted
    assert len(result) == 1
    assert all(L("p_anomaly") in m for m in result.models)


def _random_literal(rng: random.Random, names):
    name = rng.choice(names)
    return literal(Predicate.HOLDS, Constant(name), Constant("a"), TimePoint(1), positive=rng.random() < 0.7)


def _random_program(rng: random.Random) -> GroundProgram:
    names = [f"p{i}" for i in range(rng.randint(1, 6))]
    rules = []
    for _ in range(rng.randint(0, 25)):
        head = _random_literal(rng, names)
        pos = [_random_literal(rng, names) for _ in range(rng.randint(0, 2))]
        naf = [lit for lit in (_random_literal(rng, names) for _ in range(rng.randint(0, 2))) if lit != head]
        rules.append(rule(head, pos, naf))
    return program(*rules)


@pytest.mark.parametrize("seed", range(200))
def test_solver_matches_brute_force(seed):
    p = _random_program(random.Random(seed))
    assert len(p.atom_table) <= 12
    expected = brute_force_solve(p)
    found = solve_all(p, cap=4096)
    assert found.model_sets() == expected.model_sets()
    assert len(found) == len(expected)
    for m in found.models:
        assert is_stable(p, m)


def test_solve_all_is_deterministic(road_kb, worked_case):
    gp = ground_case(road_kb, worked_case)
    assert solve_all(gp).models == solve_all(gp).models


def test_oracle_suite_is_fast():
    start = time.perf_counter()
    for seed in range(200):
        p = _random_program(random.Random(seed))
        solve_all(p, cap=4096)
    assert time.perf_counter() - start < 60


def _closed(p: GroundProgram, literals) -> bool:
    """Whether `literals` is closed under the rules of a program without `not`."""
    return all(r.head in literals for r in p if all(lit in literals for lit in r.pos_body))


def _assert_minimal(p: GroundProgram, m: Interpretation, exhaustive: bool) -> None:
    positive = reduct(p, m)
    assert _closed(positive, m.literals)
    for lit in m.literals:
        assert not _closed(positive, m.literals - {lit}), lit
    if exhaustive:
        for size in range(len(m) - 1):
            for subset in combinations(m.literals, size):
                assert not _closed(positive, frozenset(subset)), subset


@pytest.mark.parametrize("seed", range(200))
def test_models_are_minimal_for_their_reduct(seed):
    p = _random_program(random.Random(seed))
    for m in solve_all(p, cap=4096).models:
        _assert_minimal(p, m, exhaustive=len(m) <= 8)


def test_worked_example_model_is_minimal(road_kb, worked_case):
    gp = ground_case(road_kb, worked_case)
    (m,) = solve_all(gp).models
    _assert_minimal(gp, m, exhaustive=False)
