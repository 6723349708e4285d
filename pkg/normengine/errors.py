"""Exceptions surfaced to the command line. Each carries the exit code to use."""

from typing import Optional

from normengine.util.constants import EXIT_INCONSISTENT, EXIT_INPUT_ERROR


class EngineError(Exception):
    """The engine could not complete the requested operation."""

    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message: str = ""):
        self.message = message
        super().__init__(message)


class ParseError(EngineError):
    """Malformed rule-language input. Position is 1-based when known."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        source: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(message)

    def __str__(self) -> str:
        where = [str(p) for p in (self.source, self.line, self.column) if p is not None]
        if where:
            return f"{':'.join(where)}: {self.message}"
        return self.message


class ArityError(ParseError):
    """A literal has the wrong number (or sort) of arguments for its predicate."""


class UnboundVariableError(ParseError):
    """A rule head mentions a variable its body never binds."""


class TimeRangeError(ParseError):
    """A case fact lies outside the declared time range."""


class SortError(EngineError):
    """A constant is used at positions of incompatible sorts."""


class OutOfRangeError(EngineError):
    """Time arithmetic left the interval range (times start at 1)."""


class SizeCapError(EngineError):
    """The brute-force oracle was asked to enumerate too many atoms."""


class InconsistentError(EngineError):
    """The knowledge base and case admit no stable model."""

    exit_code = EXIT_INCONSISTENT


class NoVerbsError(EngineError):
    """The linguistic facts contain no verb to anchor time intervals on."""


class CorpusError(EngineError):
    """The corpus directory holds no case files."""


class UnwitnessedFindingError(EngineError):
    """A reported finding is not supported by the stable models it was selected from."""
