import pytest

from normengine.dsl import NormalDefault, parse_lingfacts, parse_literal
from normengine.errors import NoVerbsError, ParseError
from normengine.ling import (
    analyze,
    assign_agents,
    default_lexicon,
    defeasible_defaults,
    lingcase_to_case,
    load_lexicon,
    segment_times,
    transform,
    verb_lemma,
)
from normengine.logic import Constant

L = parse_literal
A, B = Constant("a"), Constant("b")


def facts(text: str):
    return parse_lingfacts(text).facts


@pytest.fixture
def worked_facts(worked_lf):
    return parse_lingfacts(worked_lf.read_text(encoding="utf-8")).facts


def lexicon(*lines: str):
    return load_lexicon("\n".join(lines), source="test.tsv")


def test_verb_lemma():
    assert verb_lemma("se_trouver") == "trouver"
    assert verb_lemma("s'arrêter") == "arrêter"
    assert verb_lemma("heurter") == "heurter"
    assert verb_lemma("se_") == "se_"


def test_segment_times(worked_facts):
    assert segment_times(worked_facts) == {"trouver": 1, "heurter": 2}


def test_segment_times_chains_conjunctions():
    times = segment_times(
        facts(
            """
            compl_v(puis,rouler,freiner).
            compl_v(quand,freiner,heurter).
            """
        )
    )
    assert times == {"rouler": 1, "freiner": 2, "heurter": 3}


def test_segment_times_without_verbs():
    with pytest.raises(NoVerbsError):
        segment_times(facts('qualif_n(véhicule,"Mon").'))


def test_assign_agents(worked_facts):
    agents = assign_agents(worked_facts)
    assert agents.agent("trouver", "subject") == A
    assert agents.agent("heurter", "subject") == B
    assert agents.agent("heurter", "object") == A
    assert agents.agents == (A, B)
    assert agents.narrator_nouns == frozenset({"véhicule"})
    assert agents.warnings == ()


def test_assign_agents_fresh_constants_in_textual_order():
    agents = assign_agents(
        facts(
            """
            subject(heurter,camion).
            object(heurter,moto).
            subject(arrêter,je).
            """
        )
    )
    assert [agents.agent("heurter", "subject"), agents.agent("heurter", "object")] == [B, Constant("c")]
    assert agents.agent("arrêter", "subject") == A


def test_assign_agents_warns_on_unknown_participants():
    agents = assign_agents(facts("subject(heurter,arbre)."))
    assert agents.agent("heurter", "subject") is None
    assert len(agents.warnings) == 1
    assert "arbre" in agents.warnings[0]


def test_worked_transform(worked_facts):
    assert transform(worked_facts, default_lexicon()) == [
        L("holds(stop,a,1)"),
        L("holds(stop_sign,a,1)"),
        L("holds(combine(bump,a),b,2)"),
        L("holds(combine(shock_pos,back),a,2)"),
    ]


def test_worked_case(worked_lf):
    ling = parse_lingfacts(worked_lf.read_text(encoding="utf-8"))
    case, result = lingcase_to_case(ling, default_lexicon())
    assert case.case_id == "rear_end_stop"
    assert case.agents == ("a", "b")
    assert case.max_time == 2
    assert case.warnings == ()
    assert result.defaults == ()


def test_missing_lemmas_are_warnings():
    result = analyze(
        facts(
            """
            subject(rouler,voiture).
            qualif(rouler,lentement).
            qualif_n(voiture,rouge).
            """
        ),
        default_lexicon(),
    )
    assert result.facts == ()
    assert result.warnings == (
        "No lexicon entry for 'rouler' (verb).",
        "No lexicon entry for 'lentement' (qualif).",
        "No lexicon entry for 'rouge' (qualif_n).",
    )


def test_missing_role_is_a_warning():
    result = analyze(facts("subject(heurter,voiture)."), default_lexicon())
    assert result.facts == ()
    assert len(result.warnings) == 1
    assert "'heurter' needs a O role" in result.warnings[0]


def test_time_before_the_first_interval_is_a_warning():
    lex = lexicon("voiture\tnoun\t_", "reculer\tverb\tholds(move_back,S,T-1)")
    result = analyze(facts("subject(reculer,voiture)."), lex)
    assert result.facts == ()
    assert len(result.warnings) == 1
    assert result.warnings[0].startswith("'reculer' in clause 'reculer'")


def test_defeasible_entries_become_defaults():
    lex = lexicon(
        "voiture\tnoun\t_",
        "heurter\tverb\tholds(combine(bump,O),S,T)\tdefeasible",
    )
    lf = facts(
        """
        subject(heurter,voiture).
        object(heurter,"m'").
        """
    )
    assert defeasible_defaults(lf, lex) == [
        NormalDefault((L("subject(heurter,voiture)"),), L("holds(combine(bump,a),b,1)"), "lex_1")
    ]
    assert transform(lf, lex) == []


@pytest.mark.parametrize(
    "line, message",
    [
        ("heurter\tverb", "3 or 4"),
        ("heurter\tadverb\tholds(stop,S,T)", "Unknown lexicon context"),
        ("heurter\tcompl_v\tholds(stop,S,T)", "Unknown lexicon context"),
        ("heurter\tverb\tholds(stop,X,T)", "unknown variables X"),
        ("heurter\tverb\tsubject(heurter,voiture)", "must be semantic"),
        ("heurter\tverb\tholds(stop,S", "Bad pattern"),
    ],
)
def test_lexicon_errors(line, message):
    with pytest.raises(ParseError, match=message) as info:
        lexicon("# header", line)
    assert info.value.line == 2
    assert info.value.source == "test.tsv"


def test_lexicon_duplicate_entries():
    with pytest.raises(ParseError, match="Duplicate"):
        lexicon("stop\tcompl_v:à\t_", "stop\tcompl_v:à\tholds(stop_sign,S,T)")


def test_default_lexicon():
    lex = default_lexicon()
    assert lex.nouns == frozenset({"véhicule", "voiture", "camion", "moto"})
    assert lex.lookup("trouver", "verb").maps_to is None
    assert lex.lookup("arrière", "compl_v:à").preposition == "à"
    assert lex.lookup("heurter", "qualif") is None
