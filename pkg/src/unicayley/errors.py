"""Shared exception types and the enumeration budget guard."""

from __future__ import annotations

# Default ceiling on the number of items any full-space enumeration may
# touch.  Keeps desk-scale runs under minutes; override per call or via the
# CLI --budget flag.
DEFAULT_BUDGET = 1 << 26


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        self.what = what
        super().__init__(
            f"{what} requires {required} items but the budget is {budget}; "
            f"rerun with a budget of at least {required}"
        )


class SingularMatrixError(ValueError):
    """A matrix with determinant zero was passed where an inverse is needed."""


def check_budget(required: int, budget: int | None, what: str) -> int:
    """Raise BudgetExceededError if required > budget; return the effective budget."""
    effective = DEFAULT_BUDGET if budget is None else budget
    if required > effective:
        raise BudgetExceededError(required, effective, what)
    return effective
