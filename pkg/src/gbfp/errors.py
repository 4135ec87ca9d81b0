"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class GBFPError(Exception):
    """Base class for every error raised by this package."""


class ParseError(GBFPError, ValueError):
    """Malformed input row. ``line`` is the 1-based line number in the source."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


class CycleError(GBFPError):
    """The citation network is not acyclic.

    ``cycle`` holds one witness cycle as a list of patent ids, starting at
    its lexicographically smallest member.
    """

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("citation cycle detected: " + " -> ".join(self.cycle + self.cycle[:1]))


class OracleTooLarge(GBFPError):
    """Brute-force path enumeration exceeded its configured ceiling."""


class ParameterError(GBFPError, ValueError):
    """An argument or configuration value is out of range."""


class MetadataWarning(UserWarning):
    """Row-level problem in a metadata file that was skipped, not fatal."""
