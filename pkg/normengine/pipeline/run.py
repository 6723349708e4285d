"""parse → translate → ground → solve → extract, for one case or a corpus."""

import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from loguru import logger

from normengine.dsl import CaseFile, KnowledgeBase, parse_case, parse_kb, parse_lingfacts
from normengine.engine import (
    GroundProgram,
    Interpretation,
    collect_signature,
    ground,
    load_ground,
    solve_all,
    translate_facts,
    translate_kb,
)
from normengine.engine.solve import brave, cautious
from normengine.engine.translate import FACT
from normengine.errors import CorpusError, EngineError, InconsistentError, UnwitnessedFindingError
from normengine.ling import Lexicon, default_lexicon, lingcase_to_case, load_lexicon
from normengine.logic import Literal
from normengine.norms import AnomalyFinding, cause_sentence, close_ability, extract_findings, witnessed
from normengine.util.constants import (
    BUILTIN_KB_ID,
    CASE_SUFFIX,
    DEFAULT_MODE,
    DEFAULT_MODEL_CAP,
)
from normengine.util.paths import corpus_files, extra_kbs, kb_sources, read_text

from .report import AnomalyReport, CaseOutcome, CorpusResult, Mode

CASE_SOURCE = "case"
"""Origin label of case facts in translated and ground programs."""

PathLike = Union[str, Path]


class Timings(dict):
    """Seconds spent per pipeline stage."""

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self[name] = self.get(name, 0.0) + time.perf_counter() - start


def load_kb(kb_paths: Iterable[PathLike] = (BUILTIN_KB_ID,)) -> KnowledgeBase:
    """Parse and merge knowledge bases (paths or builtin ids), then close ability."""
    parsed = [parse_kb(text, source=source) for source, text in kb_sources(kb_paths)]
    if not parsed:
        parsed = [parse_kb(text, source=source) for source, text in kb_sources([BUILTIN_KB_ID])]
    kb = parsed[0].merge(*parsed[1:])
    return close_ability(kb)


def build_program(
    kb: KnowledgeBase,
    case: CaseFile,
    extra_facts: Sequence[Literal] = (),
    timings: Optional[Timings] = None,
) -> GroundProgram:
    """Translate `kb` plus the case facts and ground them over the case's domains."""
    timings = Timings() if timings is None else timings
    with timings.stage("translate"):
        sig = collect_signature(kb, case)
        program = translate_kb(kb) + translate_facts(tuple(case.facts) + tuple(extra_facts), CASE_SOURCE)
    with timings.stage("ground"):
        return ground(program, sig, relevant_only=True)


def _select(per_model: "list[list[AnomalyFinding]]", mode: Mode) -> "list[AnomalyFinding]":
    """Keep the findings of every model (skeptical) or of some model (credulous)."""
    if not per_model:
        return []
    keyed = [{f.key: f for f in findings} for findings in per_model]
    if mode is Mode.SKEPTICAL:
        keys = set(keyed[0]).intersection(*keyed[1:])
    else:
        keys = set().union(*keyed)
    merged = {}
    for findings in keyed:
        merged.update(findings)
    return sorted((merged[k] for k in keys), key=AnomalyFinding.sort_key)


def check_witnesses(
    findings: Sequence[AnomalyFinding],
    models: Sequence[Interpretation],
    mode: Union[Mode, str],
    case_id: str,
) -> None:
    """Re-check selected findings against the literals of the models.

    A skeptical finding needs a witness in every model, a credulous one in some model.

    Raises:
        UnwitnessedFindingError: if a finding lacks the witnesses its mode requires.
    """
    required = all if Mode(mode) is Mode.SKEPTICAL else any
    for finding in findings:
        if not required(witnessed(finding, m) for m in models):
            raise UnwitnessedFindingError(
                f"Case '{case_id}': {finding.kind.value} finding {finding.property} / {finding.agent} / "
                f"time {finding.time} is not witnessed by the stable models."
            )


def case_facts(gp: GroundProgram) -> "tuple[Literal, ...]":
    """The case facts of a ground program, recognized by their origin."""
    return tuple(
        rule.head
        for rule in gp
        if rule.is_fact()
        and rule.origin is not None
        and rule.origin.rule_id == CASE_SOURCE
        and rule.origin.variant == FACT
        and not rule.head.predicate.linguistic
    )


def solve_ground(
    gp: GroundProgram,
    case_id: str,
    mode: Union[Mode, str] = DEFAULT_MODE,
    model_cap: int = DEFAULT_MODEL_CAP,
    warnings: Sequence[str] = (),
    timings: Optional[Timings] = None,
) -> AnomalyReport:
    """Solve a ground program and report its anomalies.

    Raises:
        InconsistentError: if the program has no stable model.
        UnwitnessedFindingError: if a selected finding lacks its witnesses in the models.
    """
    mode = Mode(mode)
    timings = Timings() if timings is None else timings
    with timings.stage("solve"):
        result = solve_all(gp, cap=model_cap)
    if not result.models:
        raise InconsistentError(f"Case '{case_id}': inconsistent KB/case, no stable model exists.")
    if not result.exhausted:
        logger.warning("Case {}: more than {} stable models; the report covers the first {}.", case_id, model_cap, model_cap)
    with timings.stage("extract"):
        per_model = [extract_findings(m, gp) for m in result.models]
        findings = _select(per_model, mode)
        check_witnesses(findings, result.models, mode, case_id)
    return AnomalyReport(
        case_id=case_id,
        mode=mode,
        models_found=len(result.models),
        exhausted=result.exhausted,
        findings=tuple(findings),
        cause_sentence=cause_sentence(findings),
        facts=case_facts(gp),
        warnings=tuple(warnings),
        timings=dict(timings),
    )


def solve_case(
    kb: KnowledgeBase,
    case: CaseFile,
    mode: Union[Mode, str] = DEFAULT_MODE,
    model_cap: int = DEFAULT_MODEL_CAP,
    timings: Optional[Timings] = None,
) -> AnomalyReport:
    timings = Timings() if timings is None else timings
    gp = build_program(kb, case, timings=timings)
    return solve_ground(gp, case.case_id, mode, model_cap, case.warnings, timings)


def run_case(
    kb_paths: Iterable[PathLike],
    case_path: PathLike,
    mode: Union[Mode, str] = DEFAULT_MODE,
    model_cap: int = DEFAULT_MODEL_CAP,
) -> AnomalyReport:
    """Run the full pipeline on a `.nc` case file."""
    timings = Timings()
    with timings.stage("parse"):
        kb = load_kb(kb_paths)
        case = parse_case(read_text(case_path), source=str(case_path))
    return solve_case(kb, case, mode, model_cap, timings)


def lexicon_from(lexicon_path: Optional[PathLike]) -> Lexicon:
    if lexicon_path is None:
        return default_lexicon()
    return load_lexicon(read_text(lexicon_path), source=str(lexicon_path))


def ling_to_case(
    lingfacts_path: PathLike, lexicon_path: Optional[PathLike] = None
) -> "tuple[CaseFile, list, list[Literal]]":
    """The semantic case of a `.lf` file, with its lexicon defaults and their prerequisites.

    Raises:
        NoVerbsError: if the linguistic facts contain no verb.
    """
    ling = parse_lingfacts(read_text(lingfacts_path), source=str(lingfacts_path))
    case, result = lingcase_to_case(ling, lexicon_from(lexicon_path))
    prerequisites = [lit for rule in result.defaults for lit in rule.pre]
    return case, list(result.defaults), prerequisites


def run_lingcase(
    kb_paths: Iterable[PathLike],
    lingfacts_path: PathLike,
    lexicon_path: Optional[PathLike] = None,
    mode: Union[Mode, str] = DEFAULT_MODE,
    model_cap: int = DEFAULT_MODEL_CAP,
) -> AnomalyReport:
    """Run the linguistic stage, then the full pipeline, on a `.lf` file.

    The semantic facts the lexicon produced are embedded in the report.
    """
    timings = Timings()
    with timings.stage("parse"):
        kb = load_kb(kb_paths)
    with timings.stage("ling"):
        case, defaults, prerequisites = ling_to_case(lingfacts_path, lexicon_path)
    if defaults:
        kb = kb.add(rules=defaults)
    gp = build_program(kb, case, prerequisites, timings)
    return solve_ground(gp, case.case_id, mode, model_cap, case.warnings, timings)


def replay(
    ground_path: PathLike,
    case_id: Optional[str] = None,
    mode: Union[Mode, str] = DEFAULT_MODE,
    model_cap: int = DEFAULT_MODEL_CAP,
) -> AnomalyReport:
    """Solve a ground dump written by `--dump-ground`."""
    timings = Timings()
    with timings.stage("parse"):
        gp = load_ground(read_text(ground_path), source=str(ground_path))
    return solve_ground(gp, case_id or Path(ground_path).stem, mode, model_cap, timings=timings)


def check_case(
    kb: KnowledgeBase,
    case: CaseFile,
    mode: Union[Mode, str] = DEFAULT_MODE,
    model_cap: int = DEFAULT_MODEL_CAP,
) -> CaseOutcome:
    """Compare a case's stable models against its `#expected` and `#absent` blocks.

    A case passes when every expected literal is in every model (in some
    model, credulously) and no absent literal is in any model.
    """
    start = time.perf_counter()
    if case.expected is None:
        return CaseOutcome(case.case_id, False, error="No #expected block.")
    try:
        gp = build_program(kb, case)
        models: "tuple[Interpretation, ...]" = solve_all(gp, cap=model_cap).models
        if not models:
            raise InconsistentError("inconsistent KB/case, no stable model exists.")
    except EngineError as e:
        return CaseOutcome(case.case_id, False, error=str(e), seconds=time.perf_counter() - start)
    somewhere = brave(models)
    everywhere = cautious(models) if Mode(mode) is Mode.SKEPTICAL else somewhere
    missing = tuple(lit for lit in case.expected if lit not in everywhere)
    unexpected = tuple(lit for lit in case.absent if lit in somewhere)
    return CaseOutcome(
        case.case_id,
        passed=not missing and not unexpected,
        missing=missing,
        unexpected=unexpected,
        seconds=time.perf_counter() - start,
    )


def run_corpus(
    kb_paths: Iterable[PathLike],
    corpus_dir: PathLike,
    mode: Union[Mode, str] = DEFAULT_MODE,
    model_cap: int = DEFAULT_MODEL_CAP,
) -> CorpusResult:
    """Check every `.nc` case of `corpus_dir`.

    Knowledge bases found in the directory are added for every case. A case
    that fails to parse or solve is reported as failed and the run continues.

    Raises:
        CorpusError: if the directory holds no case file.
    """
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise CorpusError(f"'{corpus_dir}' is not a directory.")
    cases = corpus_files(corpus_dir, CASE_SUFFIX)
    if not cases:
        raise CorpusError(f"No {CASE_SUFFIX} files in '{corpus_dir}'.")
    kb = load_kb(list(kb_paths) + extra_kbs(corpus_dir))
    outcomes = []
    for path in cases:
        try:
            case = parse_case(read_text(path), source=str(path))
        except EngineError as e:
            outcomes.append(CaseOutcome(path.stem, False, error=str(e)))
            continue
        outcome = check_case(kb, case, mode, model_cap)
        logger.debug("Case {}: {}.", case.case_id, "pass" if outcome.passed else "FAIL")
        outcomes.append(outcome)
    return CorpusResult(tuple(outcomes))
