"""Error types shared across the package."""


class EnumTWError(Exception):
    """Base class for all package errors."""


class ParseError(EnumTWError):
    """Malformed input file; message names the offending line."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line


class InputError(EnumTWError):
    """Structurally valid input that violates a semantic precondition."""


class UncoverableVertexError(InputError):
    """A vertex lies in no hyperedge, so no edge cover exists."""


class CapExceededError(EnumTWError):
    """A brute-force oracle was asked to handle an instance beyond its cap."""
