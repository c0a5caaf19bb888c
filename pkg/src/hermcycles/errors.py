"""Shared exception types.

Resource guards get their own branch of the hierarchy so the CLI can map
them to a dedicated exit code (3) without string matching.
"""


class HermcyclesError(Exception):
    """Base class for all library errors."""


class ResourceLimit(HermcyclesError):
    """A computation was refused because it would exceed a hard guard."""


class TooLarge(ResourceLimit):
    """Enumeration state space exceeds the configured bound."""


class BudgetExceeded(ResourceLimit):
    """Tree window would exceed the node budget."""


class WindowTooSmall(ResourceLimit):
    """Tree window radius does not cover the requested computation."""
