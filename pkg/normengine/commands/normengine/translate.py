"""`normengine translate`."""

from pathlib import Path
from typing import Optional

import cloup

from normengine.dsl import parse_case
from normengine.engine import dump_program, translate_facts, translate_kb
from normengine.pipeline import load_kb
from normengine.pipeline.run import CASE_SOURCE
from normengine.util.cli import emit_raw
from normengine.util.paths import read_text

from .options import engine_errors, kb_option


@cloup.command(help="Print the logic program the knowledge base (and optionally a case) translates to.")
@kb_option
@cloup.option(
    "--case",
    "case_path",
    type=cloup.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Append the facts of this case file.",
)
@engine_errors
def translate(kb_paths: "tuple[str, ...]", case_path: Optional[Path]):
    program = translate_kb(load_kb(kb_paths))
    if case_path is not None:
        case = parse_case(read_text(case_path), source=str(case_path))
        program = program + translate_facts(case.facts, CASE_SOURCE)
    emit_raw(dump_program(program), nl=False)


command = translate
