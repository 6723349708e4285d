"""Utilities for working with command-line output."""

import sys

from typing import IO, Optional

import click

from .constants import EXIT_INPUT_ERROR, PROJECT_STYLED

PROGRAM_TAG = f"[{PROJECT_STYLED}]"


def emit(
    message: str = "",
    file: Optional[IO] = None,
    nl: bool = True,
    err: bool = False,
    color: Optional[bool] = None,
) -> None:
    """Emit the given string, prefixed with the program's name.

    Additional keywords are identical to `click.echo()`.
    """
    return click.echo(
        message=f"{PROGRAM_TAG} {message}", file=file, nl=nl, err=err, color=color
    )


def emit_warning(message: str, nl: bool = True) -> None:
    """Warn the user about something."""
    return emit(message=click.style(f"WARNING: {message}", fg="yellow"), nl=nl, err=True)


def emit_critical(
    message: str, exit: bool = False, nl: bool = True, exit_code: int = EXIT_INPUT_ERROR
) -> None:
    """Show a serious error message and optionally exit."""
    emit(message=click.style(f"ERROR: {message}", fg="red"), nl=nl, err=True)
    if exit:
        sys.exit(exit_code)


def emit_raw(text: str, nl: bool = True) -> None:
    """Write machine-readable output (JSON, program dumps) without the tag."""
    click.echo(text, nl=nl)
