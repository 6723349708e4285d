import click
import cloup

MAIN_COLOR = cloup.Color.bright_blue
ACCENT_COLOR = cloup.Color.magenta

HELP_EXAMPLE = click.style("normengine COMMAND --help", fg=MAIN_COLOR)
PROJECT_STYLED = click.style("normengine", fg=ACCENT_COLOR)
PROGRAM_DESCRIPTION = f"""
{PROJECT_STYLED} -- Find the cause of a road accident as the most specific violated norm.

Use {HELP_EXAMPLE} for help with a particular subcommand.
"""

ENV_PREFIX = "NORMENGINE"

CONTEXT_SETTINGS = cloup.Context.settings(
    auto_envvar_prefix=ENV_PREFIX,
    formatter_settings=cloup.HelpFormatter.settings(
        max_width=160,
        theme=cloup.HelpTheme(
            heading=cloup.Style(bold=True),
            invoked_command=cloup.Style(fg=MAIN_COLOR),
            col1=cloup.Style(fg=MAIN_COLOR),
        ),
        col2_min_width=99999,  # Force a linear layout.
    ),
)

## ENGINE DEFAULTS ##

DEFAULT_MODEL_CAP = 64
DEFAULT_MODE = "skeptical"
BUILTIN_KB_ID = "road"
BRUTE_FORCE_LIMIT = 20
REPORT_SCHEMA_VERSION = 1

KB_SUFFIX = ".nkb"
CASE_SUFFIX = ".nc"

## EXIT CODES ##

EXIT_OK = 0
EXIT_CORPUS_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONSISTENT = 3

