"""Exception hierarchy shared by every module.

All documented failure modes derive from :class:`TranslitError`, so callers
(and the CLI) can separate bad data from programming errors with one
``except`` clause.
"""

from __future__ import annotations


class TranslitError(ValueError):
    """Base class for every data-level error raised by this package."""


class EmptyWord(TranslitError):
    """Raised when a word has no Latin letters left to segment."""


class EmptyInput(TranslitError):
    """Raised when the decoder is handed an empty string."""


class EmptySource(TranslitError):
    """Raised when a pair corpus yields zero valid records."""


class ParseError(TranslitError):
    """Malformed line in one of the TSV or tagged-text formats."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(TranslitError):
    """A loaded knowledge base fails to normalise."""


class UnknownCategory(TranslitError):
    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unknown entity category {name!r} at token {position}")


class MalformedTag(TranslitError):
    def __init__(self, token: str, position: int):
        self.token = token
        self.position = position
        super().__init__(f"malformed tag in token {token!r} at position {position}")


class EmptyEvaluation(TranslitError):
    """Raised when scoring is asked for over zero records."""
