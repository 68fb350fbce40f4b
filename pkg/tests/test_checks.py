"""Tests for the property suite behind ``chemolab check``."""

from __future__ import annotations

import pytest

from chemolab import checks
from chemolab.errors import ParameterError
from chemolab.exponents import exponent_ledger
from chemolab.reports import CheckReport

FAST_CHECKS = (
    "kernel_constants",
    "classifier_table",
    "db_identity",
    "d_positive",
    "majorant",
    "scaling_norm",
    "step_residuals",
)


@pytest.mark.parametrize("name", FAST_CHECKS)
def test_fast_checks_pass(name: str) -> None:
    """Each inexpensive check passes on a healthy build."""
    reports = checks.run_checks([name])
    assert reports
    assert checks.failing_checks(reports) == []


@pytest.mark.slow
@pytest.mark.timeout(300)
@pytest.mark.parametrize("name", ["interpolation", "lbeta_bound"])
def test_grid_checks_pass(name: str) -> None:
    """The checks that evolve or calibrate on larger grids pass too."""
    assert checks.failing_checks(checks.run_checks([name])) == []


def test_ledger_samples_are_admissible() -> None:
    """Every drawn tuple satisfies the aggregation condition at its ``k``."""
    samples = checks.ledger_samples(count=20)
    assert len(samples) == 20
    for params, k in samples:
        assert exponent_ledger(params, k).aggregation_condition


def test_ledger_samples_are_reproducible() -> None:
    """The fixed seed gives the same tuples every time."""
    assert checks.ledger_samples(count=5) == checks.ledger_samples(count=5)
    assert checks.ledger_samples(count=5, seed=1) != checks.ledger_samples(count=5)


def test_injected_perturbation_fails_the_identity() -> None:
    """A perturbed identity residual is caught and named."""
    checks._inject_db_perturbation_for_test(1.0)
    reports = checks.run_checks(["db_identity", "majorant"])
    assert checks.failing_checks(reports) == ["db_identity"]
    (identity,) = (r for r in reports if r.check_name == "db_identity")
    assert identity.margin < 0


def test_perturbation_is_cleared() -> None:
    """Clearing the hook restores the passing identity."""
    checks._inject_db_perturbation_for_test(1.0)
    checks._clear_db_perturbation_for_test()
    assert checks.failing_checks(checks.run_checks(["db_identity"])) == []


def test_unknown_check_names_are_rejected() -> None:
    """Only registered checks can be selected."""
    with pytest.raises(ParameterError, match="unknown checks \\['gamma'\\]"):
        checks.run_checks(["gamma"])


def test_failing_checks_are_deduplicated() -> None:
    """Several failed reports of one check name it once."""
    failed = CheckReport("interpolation", {}, 2.0, 1.0, -1.0, False)
    passed = CheckReport("majorant", {}, 0.5, 0.5, 0.0, True)
    assert checks.failing_checks([failed, passed, failed]) == ["interpolation"]


def test_majorant_check_targets_half() -> None:
    """The closed-form target for ``y' = 2 y**2`` from ``y0 = 1`` is ``1/2``."""
    (report,) = checks.check_majorant()
    assert report.check_name == "majorant_closed_form"
    assert report.rhs == 0.5
    assert report.lhs == pytest.approx(0.5, abs=1e-6)
    assert report.passed
