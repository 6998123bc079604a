"""Exception hierarchy shared by the library and the CLI.

Each error carries a machine-readable ``category``; the CLI prints it as
``error[<category>]: <message>`` and exits with the matching status code.
Errors raised for bad input also subclass ValueError so generic callers can
catch them the usual way.
"""

from __future__ import annotations


class LrcError(Exception):
    """Base class for every error the toolkit raises on purpose."""

    category = "internal"
    exit_code = 1


class InvalidParametersError(LrcError, ValueError):
    """Parameter ranges violated (k > n, r < 1, infeasible group plan, ...)."""

    category = "invalid_parameters"
    exit_code = 3


class DimensionError(InvalidParametersError):
    """Matrix shapes don't line up, or an index is out of range."""

    category = "invalid_parameters"


class BudgetExceededError(LrcError, RuntimeError):
    """An exhaustive enumeration would exceed its configured work budget.

    The caller has to shrink the instance or raise the budget explicitly.
    """

    category = "budget_exceeded"
    exit_code = 4

    def __init__(self, what: str, required: int, budget: int) -> None:
        super().__init__(f"{what}: {required} items exceed budget {budget}")
        self.what = what
        self.required = required
        self.budget = budget


class RetriesExhaustedError(LrcError, RuntimeError):
    """A randomized construction ran out of attempts."""

    category = "retries_exhausted"
    exit_code = 5


class DeepHoleNotFoundError(LrcError, RuntimeError):
    """No vector at the requested distance from the code was found."""

    category = "deep_hole_not_found"
    exit_code = 6


class VerificationError(LrcError, RuntimeError):
    """A transformed code failed its post-verification."""

    category = "verification_failed"
    exit_code = 7


class CodeFileError(LrcError, ValueError):
    """A code file is unreadable, malformed, or semantically invalid."""

    category = "code_file"
    exit_code = 8


class FieldError(LrcError, ValueError):
    """Invalid field parameters: non-prime characteristic, reducible modulus,
    order above the supported cap, or division by zero."""

    category = "field"
    exit_code = 9


class FieldMismatchError(FieldError):
    """Operands come from different fields. Never coerced."""


class FieldTooSmallError(FieldError):
    """The field has too few elements for the requested structure."""


class FieldZeroDivisionError(FieldError, ZeroDivisionError):
    """Division or inversion by the zero element."""


def check_budget(what: str, required: int, budget: int) -> None:
    """Raise BudgetExceededError when ``required`` exceeds ``budget``."""
    if required > budget:
        raise BudgetExceededError(what, required, budget)
