"""`normengine ling`: the full pipeline on linguistic facts."""

from pathlib import Path
from typing import Optional

import cloup

from normengine import engine
from normengine.dsl import print_case, print_rule
from normengine.pipeline import build_program, ling_to_case, load_kb, run_lingcase
from normengine.util.cli import emit_raw, emit_warning

from .options import (
    dump_options,
    engine_errors,
    kb_option,
    output_options,
    show_report,
    solve_options,
)


@cloup.command(help="Turn linguistic facts into semantic ones through a lexicon, then find the cause.")
@kb_option
@cloup.option(
    "--facts",
    "facts_path",
    required=True,
    type=cloup.Path(exists=True, dir_okay=False, path_type=Path),
    help="The linguistic facts (.lf) of the report.",
)
@cloup.option(
    "--lexicon",
    "lexicon_path",
    type=cloup.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="A lexicon (.tsv). Defaults to the built-in French lexicon.",
)
@solve_options
@output_options
@dump_options
@engine_errors
def ling(
    kb_paths: "tuple[str, ...]",
    facts_path: Path,
    lexicon_path: Optional[Path],
    mode: str,
    model_cap: int,
    as_json: bool,
    output: Optional[Path],
    dump_ground: bool,
    dump_semantic: bool,
):
    if dump_semantic or dump_ground:
        case, defaults, prerequisites = ling_to_case(facts_path, lexicon_path)
        for warning in case.warnings:
            emit_warning(warning)
        if dump_semantic:
            emit_raw(print_case(case), nl=False)
            for rule in defaults:
                # Lexicon defaults need their linguistic prerequisites; a case file cannot hold them.
                emit_raw(f"% {print_rule(rule)}")
        else:
            kb = load_kb(kb_paths).add(rules=defaults)
            emit_raw(engine.dump_ground(build_program(kb, case, prerequisites)), nl=False)
        return
    report = run_lingcase(kb_paths, facts_path, lexicon_path, mode, model_cap)
    if as_json:
        for warning in report.warnings:
            emit_warning(warning)
    show_report(report, as_json, output)


command = ling
