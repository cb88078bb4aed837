"""Exception types shared across the package."""

from __future__ import annotations


class DcrError(Exception):
    """Base class for errors raised by this package."""


class ParseError(DcrError):
    """Instance file rejected, with 1-based line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ResourceLimitError(DcrError):
    """A configured cap was exceeded.

    Carries the cap name and value so callers can report what to raise,
    plus whatever partial statistics the computation had accumulated.
    """

    def __init__(self, message: str, cap_name: str, cap_value: int, stats=None):
        super().__init__(f"{message} (cap {cap_name}={cap_value})")
        self.cap_name = cap_name
        self.cap_value = cap_value
        self.stats = stats
