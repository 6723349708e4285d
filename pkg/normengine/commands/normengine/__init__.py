"""The normengine CLI definition."""

import sys
from importlib import import_module

import cloup
from loguru import logger

from normengine.__about__ import __version__
from normengine.util.constants import CONTEXT_SETTINGS, PROGRAM_DESCRIPTION

SUBCOMMANDS = (
    ".solve",
    ".ling",
    ".corpus",
    ".translate",
    ".replay",
)


@cloup.group(
    context_settings=CONTEXT_SETTINGS,
    help=PROGRAM_DESCRIPTION,
)
@cloup.version_option(__version__, prog_name="normengine")
@cloup.option(
    "-v",
    "--verbose",
    is_flag=True,
    default=False,
    help="Log every pipeline stage to stderr.",
)
def normengine(verbose: bool):
    if verbose:
        logger.remove()
        logger.add(sys.stderr, level="DEBUG", format="{time:HH:mm:ss.SSS} | {level: <7} | {name} | {message}")
        logger.enable("normengine")


for subcommand in SUBCOMMANDS:
    normengine.add_command(import_module(subcommand, package=__package__).command)


def main():
    normengine(prog_name="normengine")
