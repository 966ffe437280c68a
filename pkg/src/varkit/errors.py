"""Exception hierarchy for the toolkit.

Every error carries a stable machine-readable ``code`` so the CLI and the
HTTP service can report failures uniformly.
"""

from __future__ import annotations


class VarkitError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "ERROR"

    def __init__(self, message: str, *, where: str | None = None):
        super().__init__(message)
        self.where = where


class ParseError(VarkitError):
    """A document could not be read as the interchange schema."""

    code = "PARSE_ERROR"

    def __init__(
        self,
        message: str,
        *,
        where: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ):
        super().__init__(message, where=where)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        base = super().__str__()
        if self.line is not None:
            return f"{base} (line {self.line}, column {self.column})"
        return base


class MissingAttributeError(ParseError):
    code = "MISSING_ATTRIBUTE"


class UnknownElementError(ParseError):
    code = "UNKNOWN_ELEMENT"


class DuplicateAnswerError(ParseError):
    code = "DUPLICATE_ANSWER"


class NotFoundError(VarkitError):
    code = "NOT_FOUND"


class UnknownAreaError(VarkitError):
    code = "UNKNOWN_AREA"


class RefNotInModelError(VarkitError):
    code = "REF_NOT_IN_MODEL"


class NarrowToEmptyError(VarkitError):
    code = "NARROW_TO_EMPTY"


class ArityViolationError(VarkitError):
    code = "ARITY_VIOLATION"


class MandatoryExclusionError(VarkitError):
    code = "MANDATORY_EXCLUSION"


class NoSuchAnswerError(VarkitError):
    code = "NO_SUCH_ANSWER"


class ScopeTooLargeError(VarkitError):
    code = "SCOPE_TOO_LARGE"


class UnresolvedTagError(VarkitError):
    code = "UNRESOLVED_TAG"


class DuplicateElementIdError(ParseError):
    code = "DUPLICATE_ELEMENT_ID"


class DanglingEdgeError(ParseError):
    code = "DANGLING_EDGE"
