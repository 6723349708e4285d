"""The end-to-end pipeline and its reports."""

from .report import AnomalyReport, CaseOutcome, CorpusResult, Mode
from .run import (
    build_program,
    check_case,
    check_witnesses,
    load_kb,
    ling_to_case,
    replay,
    run_case,
    run_corpus,
    run_lingcase,
    solve_case,
    solve_ground,
)
