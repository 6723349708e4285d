"""Option groups and decorators shared by the subcommands."""

from functools import wraps
from pathlib import Path
from typing import Any, Optional

import cloup
from cloup.constraints import mutually_exclusive

from normengine.errors import EngineError
from normengine.pipeline import AnomalyReport, Mode
from normengine.util import serial
from normengine.util.cli import emit, emit_critical, emit_raw
from normengine.util.constants import BUILTIN_KB_ID, DEFAULT_MODE, DEFAULT_MODEL_CAP

kb_option = cloup.option(
    "--kb",
    "kb_paths",
    multiple=True,
    default=[BUILTIN_KB_ID],
    show_default=True,
    metavar="FILE|ID",
    help=f"A knowledge base file, or '{BUILTIN_KB_ID}' for the built-in road norms. Repeat to merge several.",
)

solve_options = cloup.option_group(
    "Solving",
    cloup.option(
        "--mode",
        type=cloup.Choice([m.value for m in Mode]),
        default=DEFAULT_MODE,
        show_default=True,
        help="Report findings present in every stable model (skeptical) or in some model (credulous).",
    ),
    cloup.option(
        "--models",
        "model_cap",
        type=cloup.IntRange(min=1),
        default=DEFAULT_MODEL_CAP,
        show_default=True,
        metavar="N",
        help="Enumerate at most N stable models.",
    ),
)

output_options = cloup.option_group(
    "Output",
    cloup.option("--json", "as_json", is_flag=True, default=False, help="Print the report as JSON."),
    cloup.option(
        "--output",
        "-o",
        type=cloup.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Also write the JSON report to this file. An existing file is backed up while writing.",
    ),
)

dump_options = cloup.option_group(
    "Stage dumps",
    cloup.option(
        "--dump-ground",
        is_flag=True,
        default=False,
        help="Print the ground program and stop. Feed it to 'replay' to finish the run.",
    ),
    cloup.option(
        "--dump-semantic",
        is_flag=True,
        default=False,
        help="Print the semantic case file and stop.",
    ),
    constraint=mutually_exclusive,
)


def engine_errors(func):
    """Turn an `EngineError` raised by the command into an error message and exit code."""

    @wraps(func)
    def dec(*args, **kwargs) -> Any:
        try:
            return func(*args, **kwargs)
        except EngineError as e:
            emit_critical(str(e), exit=True, exit_code=e.exit_code)

    return dec


def show_report(report: AnomalyReport, as_json: bool, output: Optional[Path]) -> None:
    if as_json:
        emit_raw(serial.dumps(report), nl=False)
    else:
        emit_raw(report.text())
    if output is not None:
        serial.dump(report, output)
        emit(f"Report written to {output}.", err=True)
