"""
Exception hierarchy shared by every combinatorics module.

The CLI maps each class to an exit code in one place (``main.py``).
"""

from __future__ import annotations


class OrnapopError(Exception):
    """Base class for all library errors."""


class TreeParseError(OrnapopError):
    """Malformed parenthesis string; ``offset`` is the failing byte position."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class DomainError(OrnapopError):
    """An argument lies outside the domain of the operation."""


class ResourceError(OrnapopError):
    """A configured size cap would be exceeded."""


class IntegrityError(OrnapopError):
    """An internal cross-check disagreed. Always an implementation bug."""
