#!/usr/bin/env python3
"""Devtools for normengine."""

import subprocess
import sys
from functools import wraps
from pathlib import Path
from typing import Any

import click
import cloup

## CONSTANTS ##

ROOT = Path(__file__).parent
GOLDEN_DIR = ROOT / "tests" / "golden"
SOURCES = ["normengine", "tests", "dev.py"]
PROGRAM_GOLDENS = ["schemas.nkb", "availability.nkb"]
GROUND_GOLDENS = [
    # kb, case directives, relevant_only, output
    ("follows.nkb", "#agents a,b. #times 1..2.", False, "follows_naive.ground"),
    ("availability.nkb", "#agents a. #times 1..1.", False, "availability_naive.ground"),
    ("availability.nkb", "#agents a. #times 1..1.", True, "availability_relevant.ground"),
]
PROGRAM_STYLED = click.style("dev.py", fg="green")
HELP_EXAMPLE = PROGRAM_STYLED + click.style(" COMMAND --help", fg="yellow")
PROJECT_STYLED = click.style("normengine", fg="magenta")
PROGRAM_DESCRIPTION = f"""
Development tools for {PROJECT_STYLED}.

Use {HELP_EXAMPLE} for help with a particular subcommand.
"""
PROGRAM_TAG = f"[{PROGRAM_STYLED}]"
CONTEXT_SETTINGS = cloup.Context.settings(
    show_default=True,
    formatter_settings=cloup.HelpFormatter.settings(
        max_width=160,
        theme=cloup.HelpTheme(
            heading=cloup.Style(bold=True),
            invoked_command=cloup.Style(fg=cloup.Color.green),
            col1=cloup.Style(fg=cloup.Color.yellow),
        ),
        col2_min_width=99999,  # Force a linear layout.
    ),
)

## OPTION GROUPS ##

code_style_options = cloup.option_group(
    "Code Style",
    cloup.option(
        "--black/--no-black",
        default=True,
        help="Run 'black' on all sources.",
    ),
    cloup.option(
        "--autoflake/--no-autoflake",
        default=True,
        help="Remove unused imports with 'autoflake' first.",
    ),
)

test_options = cloup.option_group(
    "Tests",
    cloup.option("-k", "keyword", default=None, metavar="EXPR", help="Only run tests matching EXPR."),
    cloup.option("--corpus/--no-corpus", default=True, help="Also run the bundled regression corpus."),
)


## OPTION GROUP HANDLERS ##


def handle_code_style(opts: "dict[str, Any]") -> None:
    black, autoflake = map(opts.pop, ("black", "autoflake"))
    if autoflake:
        run(["autoflake", "--in-place", "--recursive", "--remove-all-unused-imports"] + SOURCES)
    if black:
        run(["black"] + SOURCES)


def handle_tests(opts: "dict[str, Any]") -> None:
    keyword, corpus = map(opts.pop, ("keyword", "corpus"))
    cmd = ["pytest"]
    if keyword:
        cmd += ["-k", keyword]
    run(cmd)
    if corpus:
        run(["normengine", "corpus"])


## DECORATORS ##


def assert_all_options_handled(func):
    """Decorate a function which must entirely consume its keyword arguments.

    The keyword arguments are passed via a single named parameter `opts`. Any
    positional arguments are passed on without modification.
    """

    @wraps(func)
    def dec(*args, **kwargs) -> Any:
        func(*args, opts=kwargs)
        assert not kwargs, f"Some keyword arguments were not consumed by {func.__name__}: {kwargs.keys()}"

    return dec


## COMMANDS ##


@cloup.group(context_settings=CONTEXT_SETTINGS, help=PROGRAM_DESCRIPTION)
def dev():
    """The main command group."""


@dev.command()
@code_style_options
@assert_all_options_handled
def fmt(opts) -> None:
    """Format every source file."""
    handle_code_style(opts)


@dev.command()
@test_options
@assert_all_options_handled
def test(opts) -> None:
    """Run the test suite, then the regression corpus."""
    handle_tests(opts)


@dev.command()
def golden() -> None:
    """Regenerate the golden files under tests/golden from the current engine.

    Review the diff before committing: the tests compare against these files.
    """
    from normengine.dsl import parse_case, parse_kb
    from normengine.engine import collect_signature, dump_ground, dump_program, ground, translate_kb
    from normengine.pipeline import run_case
    from normengine.util.paths import asset_path

    def kb_of(name):
        return parse_kb((GOLDEN_DIR / name).read_text(encoding="utf-8"), source=name)

    for name in PROGRAM_GOLDENS:
        write_golden((GOLDEN_DIR / name).with_suffix(".lp"), dump_program(translate_kb(kb_of(name))))
    for name, directives, relevant_only, output in GROUND_GOLDENS:
        kb = kb_of(name)
        sig = collect_signature(kb, parse_case(directives))
        gp = ground(translate_kb(kb), sig, relevant_only=relevant_only)
        write_golden(GOLDEN_DIR / output, dump_ground(gp))
    report = run_case(["road"], Path(str(asset_path("corpus", "rear_end_stop.nc"))))
    write_golden(GOLDEN_DIR / "rear_end_stop.json", report.canonical_json())


## UTILITIES ##


class CommandFailure(Exception):
    """The command being run encountered an error."""

    def __init__(self, return_code: int = 1, message: str = ""):
        self.return_code = return_code
        self.message = message
        super().__init__(return_code)


def emit(message: str, *args, **kwargs) -> None:
    """Echo the given message tagged with [dev.py].

    *args and **kwargs are passed to `click.echo`.
    """
    click.echo(f"{PROGRAM_TAG} {message}", *args, **kwargs)


def error_exit(return_code: int = 1, message: str = "") -> None:
    emit(click.style(message, fg="red"))
    sys.exit(return_code)


def run(
    arg_list: "list[str]",
    error_on_fail: bool = True,
    echo: bool = True,
    *args,
    **kwargs,
) -> subprocess.CompletedProcess:
    """Run the command specified in `arg_list` with `subprocess.run` after first echoing it over stdout.

    *args and **kwargs are passed to `subprocess.run`.
    """
    if echo:
        cmd_str = click.style(" ".join(arg_list), fg="yellow")
        emit(f"Running: {cmd_str}")
    completed_process = subprocess.run(arg_list, *args, **kwargs)
    if error_on_fail and completed_process.returncode:
        raise CommandFailure(completed_process.returncode, f"Command {arg_list} failed.")
    return completed_process


def write_golden(path: Path, text: str) -> None:
    old = path.read_text(encoding="utf-8") if path.exists() else None
    if old == text:
        return
    path.write_text(text, encoding="utf-8")
    emit(f"{'Updated' if old is not None else 'Created'} {click.style(str(path.relative_to(ROOT)), fg='yellow')}.")


## STARTUP LOGIC ##

if __name__ == "__main__":
    try:
        dev()
    except CommandFailure as e:
        error_exit(e.return_code, e.message)
    except SystemExit:
        # Don't propagate click's automatic SystemExit if running interactively.
        if not getattr(sys, "ps1", sys.flags.interactive):
            raise
