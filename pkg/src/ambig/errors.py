"""Exception hierarchy shared by the library and the CLI.

Every domain error carries a stable ``code`` that the CLI prints in its
machine-parseable ``error: <CODE>: <detail>`` line.
"""

from __future__ import annotations


class AmbigError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "ERROR"


class ParseError(AmbigError):
    """Malformed automaton text; the message names the offending line."""

    code = "PARSE"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class EmptyLanguageError(AmbigError):
    """Trimming removed every state: the automaton accepts no word."""

    code = "EMPTY_LANGUAGE"


class NotTrimError(AmbigError):
    """An operation that presumes a trim automaton was given a non-trim one."""

    code = "NOT_TRIM"


class NotShiftableError(AmbigError):
    """Witness rotation needs an accepting visit on a cycle and found none."""

    code = "NOT_SHIFTABLE"


class PreconditionViolatedError(AmbigError):
    """A stated precondition failed; ``witness`` may carry the blocking pattern."""

    code = "PRECONDITION_VIOLATED"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ExceedsMaxError(AmbigError):
    """The exact ambiguity degree lies above the requested search bound."""

    code = "EXCEEDS_MAX"


class DepthExceededError(AmbigError):
    """A split tree was requested beyond the configured depth cap."""

    code = "DEPTH_EXCEEDED"


class LengthExceededError(AmbigError):
    """An exhaustive word/path enumeration was asked to go beyond its cap."""

    code = "LENGTH_EXCEEDED"


class HashSymbolClashError(AmbigError):
    """The padding symbol for the omega-closure is already in the alphabet."""

    code = "HASH_SYMBOL_CLASH"


class UnknownSymbolError(AmbigError):
    """A word refers to a symbol outside the automaton's alphabet."""

    code = "UNKNOWN_SYMBOL"


class SearchSpaceExceededError(AmbigError):
    """A configuration-space search outgrew its desk-scale safety cap."""

    code = "SEARCH_SPACE_EXCEEDED"
