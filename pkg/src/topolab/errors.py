"""Exception types shared across the library."""


class TopolabError(Exception):
    """Base class for all library errors."""


class ValidationError(TopolabError):
    """An input value violates a construction axiom; the message names it."""


class DslError(ValidationError):
    """A space document failed to parse; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceCapError(TopolabError):
    """A computation would exceed a configured resource cap."""


class ContractViolation(TopolabError):
    """A verified mathematical contract failed; this signals a real violation,
    not bad input."""


class UnsupportedSpaceError(TopolabError):
    """A symbolic operation was asked for a (space, operation) combination
    outside the closed world of supported descriptors."""
