"""`normengine solve`: the full pipeline on one semantic case file."""

from pathlib import Path
from typing import Optional

import cloup

from normengine import engine
from normengine.dsl import parse_case, print_case
from normengine.pipeline import build_program, load_kb, run_case
from normengine.util.cli import emit_raw
from normengine.util.paths import read_text

from .options import (
    dump_options,
    engine_errors,
    kb_option,
    output_options,
    show_report,
    solve_options,
)


@cloup.command(help="Find the cause of the accident described by a case file.")
@kb_option
@cloup.option(
    "--case",
    "case_path",
    required=True,
    type=cloup.Path(exists=True, dir_okay=False, path_type=Path),
    help="The case file (.nc) holding the semantic facts of the report.",
)
@solve_options
@output_options
@dump_options
@engine_errors
def solve(
    kb_paths: "tuple[str, ...]",
    case_path: Path,
    mode: str,
    model_cap: int,
    as_json: bool,
    output: Optional[Path],
    dump_ground: bool,
    dump_semantic: bool,
):
    if dump_semantic or dump_ground:
        case = parse_case(read_text(case_path), source=str(case_path))
        if dump_semantic:
            emit_raw(print_case(case), nl=False)
        else:
            emit_raw(engine.dump_ground(build_program(load_kb(kb_paths), case)), nl=False)
        return
    show_report(run_case(kb_paths, case_path, mode, model_cap), as_json, output)


command = solve
