from pathlib import Path

import pytest

from normengine.dsl import parse_case, parse_kb
from normengine.engine import collect_signature, ground, translate_facts, translate_kb
from normengine.norms import builtin_kb
from normengine.util.paths import asset_path

GOLDEN = Path(__file__).parent / "golden"

WORKED_CASE = """
#case rear_end_stop.
#agents a,b.
#times 1..2.
holds(stop,a,1).
holds(stop_sign,a,1).
holds(combine(bump,a),b,2).
holds(combine(shock_pos,back),a,2).
"""


@pytest.fixture
def golden():
    def read(name: str) -> str:
        return (GOLDEN / name).read_text(encoding="utf-8")

    return read


@pytest.fixture
def road_kb():
    return builtin_kb()


@pytest.fixture
def worked_case():
    return parse_case(WORKED_CASE)


@pytest.fixture
def corpus_dir() -> Path:
    return Path(str(asset_path("corpus")))


@pytest.fixture
def worked_lf() -> Path:
    return Path(str(asset_path("ling", "rear_end_stop.lf")))


def ground_case(kb, case, relevant_only=True):
    """The ground program of `case` over `kb`, as the pipeline builds it."""
    sig = collect_signature(kb, case)
    program = translate_kb(kb) + translate_facts(case.facts, "case")
    return ground(program, sig, relevant_only=relevant_only)


def kb_of(text: str):
    return parse_kb(text, source="test.nkb")
