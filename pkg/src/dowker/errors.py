"""Shared exception types."""


class ParseError(ValueError):
    """Malformed textual input. Carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SizeCapError(RuntimeError):
    """Simplex enumeration would exceed the configured size cap."""
