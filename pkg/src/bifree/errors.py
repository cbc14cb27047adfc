"""Exception types shared across the library."""


class BifreeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BifreeError):
    """Malformed input text; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class NormalizationError(BifreeError):
    """The empty word does not have moment 1."""


class IncompleteTableError(BifreeError):
    """A moment or cumulant table misses a required word."""

    def __init__(self, word_text: str):
        self.word_text = word_text
        super().__init__(f"table is missing an entry for word {word_text!r}")


class SignatureError(BifreeError):
    """Face signatures clash or do not match an operation's requirements."""


class TruncationError(BifreeError):
    """A computation needs a moment beyond a table's degree bound."""


class DomainError(BifreeError, ValueError):
    """An argument is outside the operation's domain."""


class InvolutionError(DomainError):
    """The involution is requested on a signature that is not star-closed."""
