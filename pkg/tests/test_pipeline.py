import json
import shutil
import time
from pathlib import Path

import pytest

from normengine.dsl import parse_case, parse_literal
from normengine.engine import Interpretation, dump_ground
from normengine.errors import CorpusError, InconsistentError, NoVerbsError, UnwitnessedFindingError
from normengine.logic import Constant, TimePoint
from normengine.norms import AnomalyFinding, FindingKind
from normengine.pipeline import (
    AnomalyReport,
    Mode,
    build_program,
    check_case,
    check_witnesses,
    load_kb,
    ling_to_case,
    replay,
    run_case,
    run_corpus,
    run_lingcase,
)
from normengine.util import serial
from normengine.util.constants import EXIT_INCONSISTENT
from normengine.util.paths import asset_path

COMPETING_DEFAULTS = """
x_ice: holds(stop_sign,A,T) : holds(combine(disruptive_factor,ice),A,T).
x_dry: holds(stop_sign,A,T) : -holds(combine(disruptive_factor,ice),A,T).
"""


@pytest.fixture
def worked_nc(corpus_dir):
    return corpus_dir / "rear_end_stop.nc"


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_worked_report_matches_golden(worked_nc, golden):
    report = run_case(["road"], worked_nc)
    assert report.canonical_json() == golden("rear_end_stop.json")
    assert set(report.timings) == {"parse", "translate", "ground", "solve", "extract"}


def test_report_serial_form(worked_nc):
    report = run_case(["road"], worked_nc)
    obj = json.loads(serial.dumps(report))
    assert obj["$t"] == "report"
    assert obj["findings"][0]["kind"] == "primary_form1"
    assert set(obj["timings"]) == set(report.timings)
    assert "b did not stop at time 1" in report.text()


def test_report_is_deterministic(worked_nc):
    assert run_case(["road"], worked_nc) == run_case(["road"], worked_nc)


def test_lingcase_matches_semantic_case(worked_lf, worked_nc):
    from_ling = run_lingcase(["road"], worked_lf)
    assert from_ling.canonical_json() == run_case(["road"], worked_nc).canonical_json()
    assert "ling" in from_ling.timings


def test_ling_to_case(worked_lf):
    case, defaults, prerequisites = ling_to_case(worked_lf)
    assert case.agents == ("a", "b")
    assert defaults == []
    assert prerequisites == []


def test_ling_without_verbs(tmp_path):
    lf = write(tmp_path / "empty.lf", 'qualif_n(véhicule,"Mon").\n')
    with pytest.raises(NoVerbsError):
        run_lingcase(["road"], lf)


def test_inconsistent_case(tmp_path):
    nc = write(
        tmp_path / "bad.nc",
        "#case bad.\n#agents a.\n#times 1..1.\nholds(stop,a,1).\n-holds(stop,a,1).\n",
    )
    with pytest.raises(InconsistentError) as info:
        run_case(["road"], nc)
    assert info.value.exit_code == EXIT_INCONSISTENT
    assert "no stable model" in str(info.value)


def test_skeptical_and_credulous(tmp_path, worked_nc):
    kb = write(tmp_path / "ice.nkb", COMPETING_DEFAULTS)
    skeptical = run_case(["road", kb], worked_nc, mode=Mode.SKEPTICAL)
    credulous = run_case(["road", kb], worked_nc, mode="credulous")
    assert skeptical.models_found == credulous.models_found == 2
    assert [f.kind.value for f in skeptical.findings] == ["primary_form1"]
    assert [f.kind.value for f in credulous.findings] == ["primary_form1", "primary_form2"]
    assert str(credulous.findings[1].property) == "combine(disruptive_factor,ice)"
    assert skeptical.cause_sentence == credulous.cause_sentence


def test_model_cap_is_reported(tmp_path, worked_nc):
    kb = write(tmp_path / "ice.nkb", COMPETING_DEFAULTS)
    report = run_case(["road", kb], worked_nc, model_cap=1)
    assert report.models_found == 1
    assert not report.exhausted
    assert "cap reached" in report.text()


def test_replay_round_trip(tmp_path, worked_nc, golden):
    case = parse_case(worked_nc.read_text(encoding="utf-8"))
    dump = write(tmp_path / "rear_end_stop.ground", dump_ground(build_program(load_kb(), case)))
    assert replay(dump).canonical_json() == golden("rear_end_stop.json")
    assert replay(dump, case_id="other").case_id == "other"


def test_bundled_corpus_passes(corpus_dir):
    result = run_corpus(["road"], corpus_dir)
    assert result.failed == 0, result.table()
    assert result.all_passed
    assert len(result.outcomes) == 10
    assert [o.case_id for o in result.outcomes] == sorted(o.case_id for o in result.outcomes)


def test_corpus_errors(tmp_path):
    with pytest.raises(CorpusError):
        run_corpus(["road"], tmp_path)
    with pytest.raises(CorpusError):
        run_corpus(["road"], tmp_path / "missing")


def test_failing_cases_are_reported(tmp_path, corpus_dir):
    shutil.copy(corpus_dir / "rear_end_stop.nc", tmp_path)
    write(
        tmp_path / "wrong.nc",
        "#case wrong.\n#agents a,b.\n#times 1..2.\n"
        "holds(stop,a,1).\nholds(combine(bump,a),b,2).\nholds(combine(shock_pos,back),a,2).\n"
        "#expected d_anomaly.\n#absent p_anomaly.\n",
    )
    write(tmp_path / "broken.nc", "#case broken.\nholds(stop,a,1\n")
    result = run_corpus(["road"], tmp_path)
    assert [o.case_id for o in result.outcomes] == ["broken", "rear_end_stop", "wrong"]
    assert (result.passed, result.failed) == (1, 2)
    broken, _, wrong = result.outcomes
    assert broken.error is not None
    assert wrong.diff() == [
        "- expected in every model: d_anomaly",
        "+ expected in no model: p_anomaly",
    ]
    assert "1/3 cases passed." in result.table()
    assert json.loads(serial.dumps(result))["failed"] == 2


def test_check_case_without_expectations(worked_case):
    outcome = check_case(load_kb(), worked_case)
    assert not outcome.passed
    assert outcome.error == "No #expected block."


def test_report_type_is_registered():
    assert serial.SerializableMixin.by_type_id("report") is AnomalyReport


def test_empty_case_has_no_findings(tmp_path):
    nc = write(tmp_path / "empty.nc", "#case empty.\n#agents a.\n#times 1..1.\n")
    report = run_case(["road"], nc)
    assert report.findings == ()
    assert report.cause_sentence == "no anomaly found"
    assert report.models_found == 1


def test_missing_lemma_warns_and_continues(tmp_path, worked_lf):
    lf = write(
        tmp_path / "rear_end_stop.lf",
        worked_lf.read_text(encoding="utf-8") + "qualif_n(véhicule,rouge).\n",
    )
    report = run_lingcase(["road"], lf)
    assert report.warnings == ("No lexicon entry for 'rouge' (qualif_n).",)
    assert report.cause_sentence == "b did not stop at time 1 although obliged and able."


def test_unwitnessed_findings_are_an_error():
    finding = AnomalyFinding(FindingKind.PRIMARY_FORM1, Constant("stop"), Constant("b"), TimePoint(1), "r_panom1")
    with_witness = Interpretation.of([parse_literal("anomaly_info(stop,b,1)")])
    without = Interpretation.of([parse_literal("must(stop,b,1)")])
    check_witnesses([finding], [with_witness, with_witness], Mode.SKEPTICAL, "c")
    check_witnesses([finding], [with_witness, without], Mode.CREDULOUS, "c")
    with pytest.raises(UnwitnessedFindingError, match="Case 'c': primary_form1 finding stop / b / time 1"):
        check_witnesses([finding], [with_witness, without], Mode.SKEPTICAL, "c")
    with pytest.raises(UnwitnessedFindingError):
        check_witnesses([finding], [without], Mode.CREDULOUS, "c")


def test_worked_pipeline_runs_within_a_second(worked_nc):
    start = time.perf_counter()
    report = run_case(["road"], worked_nc)
    assert time.perf_counter() - start < 1
    assert report.findings


CORPUS_CASES = sorted(p.stem for p in Path(str(asset_path("corpus"))).glob("*.nc"))


@pytest.mark.parametrize("name", CORPUS_CASES)
def test_each_corpus_case_runs_within_two_seconds(corpus_dir, name):
    start = time.perf_counter()
    run_case(["road", corpus_dir / "exceptions.nkb"], corpus_dir / f"{name}.nc")
    assert time.perf_counter() - start < 2
