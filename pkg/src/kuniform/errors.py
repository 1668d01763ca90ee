"""Shared exception types.

These mark the three failure modes the library distinguishes from plain
programming errors: a computation that does not apply to the given input,
an input exceeding a configured capacity cap, and a subset search that
would overrun its evaluation budget.
"""


class NotApplicableError(RuntimeError):
    """The requested computation is not defined for this input."""


class CapacityError(RuntimeError):
    """The input exceeds a configured size cap for exact brute force."""


class BudgetExceededError(RuntimeError):
    """A subset search would exceed its evaluation budget; no partial result."""
