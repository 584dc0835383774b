"""Exception and warning types shared across the package."""

from __future__ import annotations


class AlbrecError(Exception):
    """Base class for all package-specific errors."""


class ParseError(AlbrecError, ValueError):
    """A corpus record (or config file) is structurally malformed.

    ``field`` names the offending field when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ValidationError(AlbrecError, ValueError):
    """A record is well-formed but violates a content invariant."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class DuplicateIdError(ValidationError):
    """Two articles share the same id."""


class CoefficientError(AlbrecError, ValueError):
    """Field-weight coefficients violate the affine constraint."""


class UsageError(AlbrecError, ValueError):
    """A config file or flag combination is malformed (CLI usage error)."""


class UnknownDocError(AlbrecError, KeyError):
    """A document id is not present in the index."""

    def __str__(self) -> str:  # KeyError quotes its message by default
        return self.args[0] if self.args else ""


class EmptyQueryError(AlbrecError, ValueError):
    """A search query is empty after analysis (distinct from zero results)."""


class IndexFormatError(AlbrecError, ValueError):
    """A persisted file has an unreadable or unsupported format."""


class JudgmentConflictError(AlbrecError, ValueError):
    """Relevance judgments disagree for the same (query, candidate) pair."""


class AnalyzerMismatchWarning(UserWarning):
    """The analyzer config at query time differs from the one used at build time."""
