"""`normengine replay`: finish a run from a ground dump."""

from pathlib import Path
from typing import Optional

import cloup

from normengine.pipeline import replay as replay_ground

from .options import engine_errors, output_options, show_report, solve_options


@cloup.command(help="Solve a ground program written by '--dump-ground' and report its findings.")
@cloup.argument("ground_path", type=cloup.Path(exists=True, dir_okay=False, path_type=Path), metavar="GROUND_FILE")
@cloup.option("--case-id", default=None, help="The case id to report. Defaults to the file's stem.")
@solve_options
@output_options
@engine_errors
def replay(
    ground_path: Path,
    case_id: Optional[str],
    mode: str,
    model_cap: int,
    as_json: bool,
    output: Optional[Path],
):
    show_report(replay_ground(ground_path, case_id, mode, model_cap), as_json, output)


command = replay
