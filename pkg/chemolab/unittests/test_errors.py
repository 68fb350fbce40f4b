"""Unit tests for the chemolab exception hierarchy."""

from __future__ import annotations

import pytest

from chemolab.errors import (
    ChemolabError,
    ConfigError,
    ConfigViolation,
    DegenerateLedgerError,
    NonFiniteError,
    ParameterError,
    PreconditionError,
    ResolutionError,
    StepRejectedError,
)


@pytest.mark.parametrize(
    ("error", "builtin"),
    [
        (ParameterError("x"), ValueError),
        (PreconditionError("x"), ValueError),
        (ResolutionError("x"), ValueError),
        (ConfigError([]), ValueError),
        (DegenerateLedgerError("theta", 0.0), ArithmeticError),
        (NonFiniteError("reaction"), FloatingPointError),
        (StepRejectedError("ringing"), RuntimeError),
    ],
)
def test_errors_keep_their_builtin_ancestry(
    error: ChemolabError, builtin: type[Exception]
) -> None:
    """Callers catching the builtin still see chemolab errors."""
    assert isinstance(error, ChemolabError)
    assert isinstance(error, builtin)


def test_violation_renders_path_first() -> None:
    """A violation prints as ``path: message``."""
    violation = ConfigViolation("solver.dt_min", "too large")
    assert str(violation) == "solver.dt_min: too large"


def test_config_error_joins_every_violation() -> None:
    """The message lists all violations in order."""
    error = ConfigError([
        ConfigViolation("model.alpha", "alpha must exceed 1"),
        ConfigViolation("grid", "N must be a power of two"),
    ])
    assert str(error) == (
        "invalid configuration: model.alpha: alpha must exceed 1; "
        "grid: N must be a power of two"
    )
    assert len(error.violations) == 2


def test_numerical_errors_carry_their_subject() -> None:
    """The offending term or quantity is kept as an attribute."""
    assert NonFiniteError("chemotaxis").term == "chemotaxis"
    degenerate = DegenerateLedgerError("lambda_alpha", 1e-17)
    assert degenerate.quantity == "lambda_alpha"
    assert "lambda_alpha" in str(degenerate)
    assert StepRejectedError("negative ringing").reason == "negative ringing"
