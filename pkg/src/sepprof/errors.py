"""Shared exception types."""


class BudgetError(RuntimeError):
    """A search or enumeration exceeded its explicit budget."""


class ExactSearchInfeasible(RuntimeError):
    """Exact computation was requested on an instance above the exact limit."""
