"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so raise the most specific
class that applies.
"""
from __future__ import annotations


class ConfigError(ValueError):
    """Bad configuration, unknown keys, malformed CLI arguments (exit 2)."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain (exit 3)."""


class CapacityError(PreconditionError):
    """A requested size exceeds the documented resource budget."""


class IntegrityError(RuntimeError):
    """Computed or stored data failed an internal consistency check (exit 4)."""


class VerificationError(RuntimeError):
    """A verification suite ran to completion and found a violation (exit 5)."""
