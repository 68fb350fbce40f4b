"""Exception hierarchy for chemolab.

Every concrete error also derives from the closest builtin exception so
callers that only know about ``ValueError`` or ``ArithmeticError`` keep
working.
"""

from __future__ import annotations

import dataclasses


class ChemolabError(Exception):
    """Base class for all errors raised by chemolab."""


class ParameterError(ChemolabError, ValueError):
    """A standing hypothesis or a documented field invariant is violated."""


class PreconditionError(ChemolabError, ValueError):
    """An operation was called outside the regime where it is defined."""


class ResolutionError(ChemolabError, ValueError):
    """The grid cannot resolve the requested profile or rescaling."""


class DegenerateLedgerError(ChemolabError, ArithmeticError):
    """A closed-form exponent has a vanishing denominator."""

    def __init__(self, quantity: str, denominator: float) -> None:
        self.quantity = quantity
        self.denominator = denominator
        super().__init__(
            f"degenerate exponent ledger: denominator of {quantity} is "
            f"{denominator!r}"
        )


class NonFiniteError(ChemolabError, FloatingPointError):
    """A right-hand-side term produced NaN or an infinity."""

    def __init__(self, term: str) -> None:
        self.term = term
        super().__init__(f"non-finite values produced by the {term} term")


class StepRejectedError(ChemolabError, RuntimeError):
    """A single time step failed and should be retried with a smaller dt."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"step rejected: {reason}")


@dataclasses.dataclass(frozen=True, slots=True)
class ConfigViolation:
    """A single schema or invariant violation at ``path``."""

    path: str
    message: str

    def __str__(self) -> str:
        """Render as ``path: message``."""
        return f"{self.path}: {self.message}"


class ConfigError(ChemolabError, ValueError):
    """A configuration document failed validation.

    Parameters
    ----------
    violations
        Every violation found, in document order. Validation never stops at
        the first problem.

    """

    def __init__(self, violations: list[ConfigViolation]) -> None:
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid configuration: {lines}")


__all__ = [
    "ChemolabError",
    "ConfigError",
    "ConfigViolation",
    "DegenerateLedgerError",
    "NonFiniteError",
    "ParameterError",
    "PreconditionError",
    "ResolutionError",
    "StepRejectedError",
]
