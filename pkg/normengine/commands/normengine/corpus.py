"""`normengine corpus`: regression run over a directory of cases."""

from pathlib import Path
from typing import Optional

import cloup

from normengine.pipeline import run_corpus
from normengine.util import serial
from normengine.util.cli import emit, emit_critical, emit_raw
from normengine.util.constants import EXIT_CORPUS_FAILURE
from normengine.util.paths import asset_path

from .options import engine_errors, kb_option, solve_options


@cloup.command(help="Check every case of a corpus against its expected findings.")
@kb_option
@cloup.option(
    "--dir",
    "corpus_dir",
    type=cloup.Path(file_okay=False, path_type=Path),
    default=None,
    help="The corpus directory: .nc cases, plus .nkb files added to the knowledge base. Defaults to the bundled corpus.",
)
@solve_options
@cloup.option("--json", "as_json", is_flag=True, default=False, help="Print the results as JSON.")
@engine_errors
def corpus(
    kb_paths: "tuple[str, ...]",
    corpus_dir: Optional[Path],
    mode: str,
    model_cap: int,
    as_json: bool,
):
    if corpus_dir is None:
        corpus_dir = Path(str(asset_path("corpus")))
    result = run_corpus(kb_paths, corpus_dir, mode, model_cap)
    if as_json:
        emit_raw(serial.dumps(result), nl=False)
    else:
        emit(f"Corpus {corpus_dir}")
        emit_raw(result.table())
    if not result.all_passed:
        emit_critical(f"{result.failed} of {len(result.outcomes)} cases failed.", exit=True, exit_code=EXIT_CORPUS_FAILURE)


command = corpus
