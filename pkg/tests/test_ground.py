import time
from itertools import product

import pytest

from normengine.dsl import parse_case, parse_literal
from normengine.engine import (
    DomainSignature,
    GroundProgram,
    LogicProgram,
    LpRule,
    collect_signature,
    dump_ground,
    ground,
    load_ground,
    translate_kb,
)
from normengine.errors import OutOfRangeError, SortError
from normengine.logic import Constant, Predicate, Sort, TimePoint, apply, resolve_sort, variable_sorts
from normengine.pipeline.run import load_kb

from conftest import ground_case, kb_of

L = parse_literal


def _ground_golden(golden, kb_name: str, case_text: str, relevant_only: bool) -> str:
    kb = kb_of(golden(kb_name))
    sig = collect_signature(kb, parse_case(case_text))
    return dump_ground(ground(translate_kb(kb), sig, relevant_only=relevant_only))


def test_worked_signature(road_kb, worked_case):
    sig = collect_signature(road_kb, worked_case)
    assert sig.agents == (Constant("a"), Constant("b"))
    assert sig.times == (TimePoint(1), TimePoint(2))
    assert Constant("back") in sig.objects
    assert Constant("brake") in sig.actions


def test_signature_from_declarations_only():
    sig = collect_signature(kb_of(""), parse_case("#agents a,b. #times 1..3."))
    assert sig.agents == (Constant("a"), Constant("b"))
    assert sig.max_time == 3
    assert sig.properties == ()


def test_property_domain_is_closed_under_negation(road_kb, worked_case):
    sig = collect_signature(road_kb, worked_case)
    assert L("holds(neg(stop),a,1)").args[0] in sig.properties
    assert L("holds(neg(combine(follows,a)),a,1)").args[0] in sig.properties


def test_constant_used_as_agent_and_time():
    kb = kb_of("r: holds(stop,A,T) -> must(stop,A,T).")
    with pytest.raises(SortError, match="'1'"):
        collect_signature(kb, parse_case("#agents a. #times 1..1. holds(stop,1,1)."))


def test_digit_named_action_is_not_a_time_point():
    sig = collect_signature(kb_of("action(9). pcb(9,stop)."), parse_case("#agents a. #times 1..2."))
    assert Constant("9") in sig.actions


def test_digit_named_agent_outside_the_time_range():
    sig = collect_signature(kb_of(""), parse_case("#agents a. #times 1..2. holds(stop,7,1)."))
    assert Constant("7") in sig.agents
    with pytest.raises(SortError, match="'7'"):
        collect_signature(kb_of(""), parse_case("#agents a. #times 1..7. holds(stop,7,1)."))


def test_constant_used_as_property_and_agent():
    with pytest.raises(SortError, match="'stop'"):
        collect_signature(kb_of(""), parse_case("holds(stop,stop,1)."))


def test_follows_instances_only_where_time_fits(golden):
    text = _ground_golden(golden, "follows.nkb", "#agents a,b. #times 1..2.", relevant_only=False)
    assert text == golden("follows_naive.ground")


def test_availability_naive_golden(golden):
    text = _ground_golden(golden, "availability.nkb", "#agents a. #times 1..1.", relevant_only=False)
    assert text == golden("availability_naive.ground")


def test_availability_relevant_golden(golden):
    text = _ground_golden(golden, "availability.nkb", "#agents a. #times 1..1.", relevant_only=True)
    assert text == golden("availability_relevant.ground")


def test_ground_rule_is_itself():
    rule = LpRule(L("p_anomaly"), (L("d_anomaly"),))
    sig = DomainSignature(agents=(Constant("a"),), max_time=1)
    assert list(ground(LogicProgram((rule,)), sig)) == [rule]
    assert len(ground(LogicProgram(), sig)) == 0


def test_relevant_instances_are_naive_instances(road_kb, worked_case):
    relevant = ground_case(road_kb, worked_case, relevant_only=True)
    naive = ground_case(road_kb, worked_case, relevant_only=False)
    assert set(relevant.rules) <= set(naive.rules)
    assert len(relevant) < len(naive)


def test_dump_is_canonical_and_reloads(road_kb, worked_case):
    gp = ground_case(road_kb, worked_case)
    text = dump_ground(gp)
    reloaded = load_ground(text, source="worked.ground")
    assert reloaded == gp
    assert dump_ground(reloaded) == text


def test_duplicate_rules_are_merged():
    rule = LpRule(L("p_anomaly"), (L("d_anomaly"), L("must(stop,a,1)")))
    swapped = LpRule(L("p_anomaly"), (L("must(stop,a,1)"), L("d_anomaly")))
    assert len(GroundProgram.of([rule, swapped])) == 1


def test_grounding_stays_small_at_four_agents_six_times(corpus_dir):
    kb = load_kb(["road", corpus_dir / "exceptions.nkb"])
    case = parse_case((corpus_dir / "four_agents.nc").read_text(encoding="utf-8"))
    start = time.perf_counter()
    gp = ground_case(kb, case)
    assert time.perf_counter() - start < 2
    assert all(rule.is_ground() for rule in gp)


SMALL_KB = """
action(brake).
pcb(brake,stop).
r1: holds(combine(bump,V),W,T) -> -holds(stop,W,T).
r2: holds(combine(shock,V),W,T) : holds(combine(follows,V),W,T-1) [holds(control,W,T-1)].
r3: action(Act) & pcb(Act,P) : available(Act,P,A,T).
r4: must(P,A,T) & available(Act,P,A,T) -> able(P,A,T).
"""
THREE_BY_THREE = "#agents a,b,c. #times 1..3. holds(combine(bump,a),b,2)."


def _brute_force_instances(program, sig):
    """Every substitution of every rule over its sort domains, keeping the instances inside 1..max_time."""
    instances = set()
    for rule in program:
        sorts = variable_sorts(*rule.literals())
        names = sorted(sorts)
        for values in product(*(sig.domain(resolve_sort(sorts[name])) for name in names)):
            subst = dict(zip(names, values))
            try:
                head = apply(subst, rule.head)
                pos = frozenset(apply(subst, lit) for lit in rule.pos_body)
                naf = frozenset(apply(subst, lit) for lit in rule.naf_body)
            except OutOfRangeError:
                continue
            times = [t.value for lit in {head} | pos | naf for t, s in lit.constants() if s is Sort.TIME]
            if any(t > sig.max_time for t in times) or head in naf:
                continue
            instances.add((head, pos, naf))
    return instances


def _instances(gp):
    return {(r.head, frozenset(r.pos_body), frozenset(r.naf_body)) for r in gp}


def _small_program():
    kb = kb_of(SMALL_KB)
    case = parse_case(THREE_BY_THREE)
    sig = collect_signature(kb, case)
    return translate_kb(kb), sig


def test_naive_grounding_is_every_substitution():
    program, sig = _small_program()
    assert len(sig.agents) == 3 and sig.max_time == 3
    expected = _brute_force_instances(program, sig)
    assert _instances(ground(program, sig, relevant_only=False)) == expected
    assert _instances(ground(program, sig, relevant_only=True)) <= expected


@pytest.mark.parametrize("relevant_only", [False, True])
def test_ground_literals_stay_inside_the_domains(relevant_only):
    program, sig = _small_program()
    gp = ground(program, sig, relevant_only=relevant_only)
    for lit in gp.atom_table:
        assert lit.is_ground()
        for term, sort in lit.constants():
            assert sig.contains(term, sort), (str(lit), str(term))
        for arg, sort in zip(lit.args, lit.predicate.sorts):
            if sort is Sort.PROPERTY:
                assert arg in sig.properties, str(lit)
    size = {
        Sort.PROPERTY: len(sig.properties),
        Sort.AGENT: len(sig.agents),
        Sort.TIME: sig.max_time,
        Sort.ACTION: len(sig.actions),
    }
    bound = 0
    for predicate in Predicate:
        if predicate.linguistic:
            continue
        count = 1
        for sort in predicate.sorts:
            count *= size[sort]
        bound += 2 * count
    assert len(gp.atom_table) <= bound
    largest = max(size[Sort.PROPERTY], size[Sort.ACTION]) ** 2
    assert len(gp.atom_table) <= 2 * len(Predicate) * largest * len(sig.agents) * sig.max_time
