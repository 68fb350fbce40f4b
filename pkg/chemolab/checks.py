"""Property suite run by ``chemolab check``.

Each check is a zero-argument function returning one or more
:class:`~chemolab.reports.CheckReport` records. Inputs are canned and the
random tuples come from a fixed seed, so the suite is deterministic.
"""

from __future__ import annotations

import math
import typing as typ

import numpy as np

from ._logging import get_logger
from .diagnostics import (
    ScalingSpec,
    calibrate_interpolation_constant,
    interpolation_check,
    lbeta_bound,
    lbeta_bound_check,
    mass_balance_residual,
    pde_residual,
    scaling_rescale,
)
from .errors import DegenerateLedgerError, ParameterError
from .exponents import exponent_ledger
from .grid import Grid, kernel_constants
from .integrators import RunState, SolverConfig, run, step
from .majorant import existence_time_estimate
from .model import ModelParams, Verdict, classify_regime
from .profiles import Gaussian, sample_profile
from .reports import CheckReport
from .spectral import lk_norm

if typ.TYPE_CHECKING:
    import collections.abc as cabc

logger = get_logger(__name__)

LEDGER_SEED: typ.Final[int] = 20240611
LEDGER_SAMPLES: typ.Final[int] = 100
IDENTITY_TOL: typ.Final[float] = 1e-10
SCALING_NORM_TOL: typ.Final[float] = 1e-10

_FAULTS: dict[str, float] = {}

CLASSIFIER_TABLE: typ.Final[tuple[tuple[ModelParams, Verdict], ...]] = (
    (ModelParams(n=3, sigma=1, alpha=2, beta=3), Verdict.GLOBAL_CASE_1),
    (ModelParams(n=3, sigma=2, alpha=2, beta=5), Verdict.GLOBAL_CASE_2),
    (ModelParams(n=3, sigma=2, alpha=3, beta=3), Verdict.CRITICAL),
    (ModelParams(n=3, sigma=3, alpha=4, beta=3), Verdict.CONJECTURED_BLOWUP),
)


def _inject_db_perturbation_for_test(delta: float) -> None:
    """Add ``delta`` to every ledger identity residual until cleared."""
    _FAULTS["db_identity"] = delta


def _clear_db_perturbation_for_test() -> None:
    """Remove an injected ledger perturbation."""
    _FAULTS.pop("db_identity", None)


def _tolerance_report(
    name: str, inputs: dict[str, typ.Any], value: float, target: float, tol: float
) -> CheckReport:
    margin = tol - abs(value - target)
    return CheckReport(name, inputs, value, target, margin, margin >= 0)


def _bound_report(
    name: str, inputs: dict[str, typ.Any], value: float, limit: float
) -> CheckReport:
    return CheckReport(name, inputs, value, limit, limit - value, value <= limit)


def check_kernel_constants() -> list[CheckReport]:
    """``c_3 == 1/(4 pi)`` and ``b_3 == 4 pi / 3``."""
    constants = kernel_constants(3)
    return [
        _tolerance_report(
            "kernel_c3", {"n": 3}, constants.c_n, 1.0 / (4.0 * math.pi), 1e-14
        ),
        _tolerance_report(
            "kernel_b3", {"n": 3}, constants.b_n, 4.0 * math.pi / 3.0, 1e-14
        ),
    ]


def check_classifier_table() -> list[CheckReport]:
    """The worked tuples map to their documented verdicts."""
    reports = []
    for params, expected in CLASSIFIER_TABLE:
        got = classify_regime(params).verdict
        inputs = {
            "n": params.n,
            "sigma": params.sigma,
            "alpha": params.alpha,
            "beta": params.beta,
            "expected": str(expected),
            "verdict": str(got),
        }
        matched = float(got is expected)
        reports.append(
            CheckReport(
                "classifier_table", inputs, matched, 1.0, matched - 1.0, bool(matched)
            )
        )
    return reports


def ledger_samples(
    count: int = LEDGER_SAMPLES, seed: int = LEDGER_SEED
) -> list[tuple[ModelParams, float]]:
    """Draw ``count`` tuples obeying the aggregation condition, with ``k``.

    ``k`` is one above the admissibility threshold. Tuples whose ledger is
    degenerate are redrawn.
    """
    rng = np.random.default_rng(seed)
    samples: list[tuple[ModelParams, float]] = []
    while len(samples) < count:
        sigma, alpha, beta = (
            float(x) for x in rng.uniform((1.0, 1.05, 1.05), (3.0, 4.0, 6.0))
        )
        params = ModelParams(n=3, sigma=sigma, alpha=alpha, beta=beta)
        try:
            first = exponent_ledger(params, max(beta, 2.0))
            k = max(first.k0, beta - (alpha - 1.0), 1.0) + 1.0
            ledger = exponent_ledger(params, k)
            ledger.d_over_b()
        except DegenerateLedgerError:
            continue
        if ledger.aggregation_condition:
            samples.append((params, k))
    return samples


def check_db_identity() -> list[CheckReport]:
    """``d/b == beta - alpha + 1`` across random admissible tuples."""
    offset = _FAULTS.get("db_identity", 0.0)
    worst = max(
        abs(exponent_ledger(params, k).identity_residual() + offset)
        for params, k in ledger_samples()
    )
    inputs = {"samples": LEDGER_SAMPLES, "seed": LEDGER_SEED}
    return [_bound_report("db_identity", inputs, worst, IDENTITY_TOL)]


def check_d_positive() -> list[CheckReport]:
    """``d > 0`` wherever the growth and aggregation conditions hold."""
    values = [
        ledger.d
        for ledger in (exponent_ledger(params, k) for params, k in ledger_samples())
        if ledger.growth_condition
    ]
    smallest = min(values, default=math.inf)
    inputs = {"samples": len(values), "seed": LEDGER_SEED}
    return [CheckReport("d_positive", inputs, smallest, 0.0, smallest, smallest > 0)]


def check_majorant() -> list[CheckReport]:
    """The majorant time for ``y' = 2 y**2`` matches ``1/(2 y0)`` at ``y0 = 1``."""
    estimate = existence_time_estimate(1.0, ModelParams(n=3, sigma=1, alpha=2, beta=3))
    inputs = {"sigma": 1.0, "alpha": 2.0, "y0": 1.0}
    return [_tolerance_report("majorant_closed_form", inputs, estimate, 0.5, 1e-6)]


def check_interpolation() -> list[CheckReport]:
    """Every probe has a non-negative margin under the calibrated constant."""
    grid = Grid(N=128, L=16.0)
    params = ModelParams(n=3, sigma=1, alpha=2, beta=3, domain_length=grid.L)
    calibration = calibrate_interpolation_constant(grid, params)
    reports = []
    for width in (0.5, 1.0, 2.0):
        v = sample_profile(Gaussian(1.0, width), grid)
        for r, q in ((1.0, 2.0), (1.5, 2.5), (2.0, 3.0)):
            for c0 in (0.1, 1.0, 10.0):
                result = interpolation_check(
                    v, r, q, c0, params, constant=calibration.constant
                )
                inputs = {
                    "width": width,
                    "r": r,
                    "q": q,
                    "c0": c0,
                    "constant": calibration.constant,
                }
                reports.append(
                    CheckReport(
                        "interpolation",
                        inputs,
                        result.lhs,
                        result.rhs,
                        result.margin,
                        result.margin >= 0,
                    )
                )
    return reports


def check_scaling_norm() -> list[CheckReport]:
    """Dilation preserves the ``L**beta`` quadrature norm."""
    grid = Grid(N=128, L=32.0)
    params = ModelParams(n=3, sigma=2, alpha=3, beta=3, domain_length=grid.L)
    profile = Gaussian(1.0, 2.0)
    reference = lk_norm(sample_profile(profile, grid), params.beta)
    reports = []
    for lam in (0.5, 1.0, 2.0):
        scaled = scaling_rescale(profile, grid, ScalingSpec(lam, params))
        value = lk_norm(scaled, params.beta)
        reports.append(
            _tolerance_report(
                "scaling_norm",
                {"lam": lam, "beta": params.beta},
                value / reference,
                1.0,
                SCALING_NORM_TOL,
            )
        )
    return reports


def _canned_setup() -> tuple[Grid, ModelParams, Gaussian]:
    grid = Grid(N=64, L=16.0)
    params = ModelParams(n=3, sigma=1, alpha=2, beta=3, domain_length=grid.L)
    return grid, params, Gaussian(0.5, 4.0 / 3.0)


def check_lbeta_bound() -> list[CheckReport]:
    """A short subcritical run keeps ``∫u**beta`` under the a priori bound."""
    grid, params, profile = _canned_setup()
    config = SolverConfig(dt_max=0.05, t_end=1.0)
    result = run(sample_profile(profile, grid), params, config)
    bound = lbeta_bound(result, params)
    peak = max(row.nonlocal_mass for row in result.trace)
    inputs = {"sigma": 1.0, "alpha": 2.0, "beta": 3.0, "t_end": 1.0}
    passed = lbeta_bound_check(result, params)
    return [CheckReport("lbeta_bound", inputs, peak, bound, bound - peak, passed)]


def check_step_residuals() -> list[CheckReport]:
    """One IMEX2 step is consistent with the equation and the mass balance."""
    grid, params, profile = _canned_setup()
    u0 = sample_profile(profile, grid)
    dt = 1e-3
    after = step(RunState(t=0.0, u=u0, dt=dt), params, SolverConfig()).u
    residual = pde_residual(u0, after, dt, params).value
    balance = mass_balance_residual(u0, after, dt, params)
    inputs = {"dt": dt, "scheme": "IMEX2"}
    return [
        _bound_report("pde_residual", inputs, residual, 1e-2),
        _bound_report("mass_balance", inputs, balance, 1e-3),
    ]


CHECKS: typ.Final[dict[str, cabc.Callable[[], list[CheckReport]]]] = {
    "kernel_constants": check_kernel_constants,
    "classifier_table": check_classifier_table,
    "db_identity": check_db_identity,
    "d_positive": check_d_positive,
    "majorant": check_majorant,
    "interpolation": check_interpolation,
    "scaling_norm": check_scaling_norm,
    "lbeta_bound": check_lbeta_bound,
    "step_residuals": check_step_residuals,
}


def run_checks(names: cabc.Iterable[str] | None = None) -> list[CheckReport]:
    """Run the named checks (all by default) and return every report.

    Raises
    ------
    ParameterError
        If a name is not a registered check.

    """
    selected = list(CHECKS) if names is None else list(names)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        msg = f"unknown checks {unknown}; available: {sorted(CHECKS)}"
        raise ParameterError(msg)
    reports: list[CheckReport] = []
    for name in selected:
        batch = CHECKS[name]()
        failed = sum(not report.passed for report in batch)
        logger.info(f"check finished name={name} reports={len(batch)} failed={failed}")
        reports.extend(batch)
    return reports


def failing_checks(reports: cabc.Iterable[CheckReport]) -> list[str]:
    """Return the distinct names of failed checks, in report order."""
    return list(dict.fromkeys(r.check_name for r in reports if not r.passed))


__all__ = [
    "CHECKS",
    "CLASSIFIER_TABLE",
    "failing_checks",
    "ledger_samples",
    "run_checks",
]
