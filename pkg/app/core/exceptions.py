"""
Exception hierarchy shared by the services and the command line.
"""
from typing import Optional


class ListColoringError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParametersError(ListColoringError, ValueError):
    """Raised when numeric or structural parameters violate a precondition."""


class DomainError(InvalidParametersError):
    """Raised when a function is evaluated outside its domain."""


class UnsupportedParametersError(InvalidParametersError):
    """Raised when parameters are valid in general but not for this operation."""


class DimacsParseError(ListColoringError, ValueError):
    """Raised when DIMACS input is malformed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ListAssignmentError(ListColoringError, ValueError):
    """Raised when list assignment or coloring input is malformed."""


class ResourceBudgetExceeded(ListColoringError):
    """
    Raised when an exhaustive search exceeds its node budget.

    The answer is unknown, not negative.
    """

    def __init__(self, nodes: int, budget: int):
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"search exceeded node budget ({nodes} > {budget}); result unknown")


class SchemeInapplicableError(ListColoringError):
    """Raised when the augmented lists admit no list coloring."""


class GuaranteeViolationError(ListColoringError, RuntimeError):
    """Raised when the derandomized scheme falls short of its proven guarantee."""
