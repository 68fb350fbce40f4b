"""chemolab package."""

from __future__ import annotations

from .config import (
    ExperimentConfig,
    SweepMode,
    SweepSpec,
    parse_config,
    parse_sweep_spec,
)
from .diagnostics import (
    InterpolationCheck,
    ScalingSpec,
    calibrate_interpolation_constant,
    interpolation_check,
    lbeta_bound_check,
    mass_balance_residual,
    pde_residual,
    scaling_rescale,
    scaling_solution_test,
)
from .errors import (
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
from .exponents import ExponentLedger, exponent_ledger
from .grid import Field, Grid, KernelConstants, kernel_constants
from .integrators import (
    RunResult,
    RunState,
    RunVerdict,
    Scheme,
    SolverConfig,
    run,
    step,
)
from .majorant import existence_time_estimate
from .model import (
    ModelParams,
    ModelVariant,
    Regime,
    Verdict,
    classify_regime,
    fujita_exponent,
    sobolev_exponent,
)
from .profiles import Constant, Gaussian, MultiBump, Perturbed, sample_profile
from .reports import CheckReport
from .spectral import (
    free_space_potential,
    gradient,
    lk_norm,
    newtonian_potential,
    potential_discrepancy,
)

__all__ = [
    "ChemolabError",
    "CheckReport",
    "ConfigError",
    "ConfigViolation",
    "Constant",
    "DegenerateLedgerError",
    "ExperimentConfig",
    "ExponentLedger",
    "Field",
    "Gaussian",
    "Grid",
    "InterpolationCheck",
    "KernelConstants",
    "ModelParams",
    "ModelVariant",
    "MultiBump",
    "NonFiniteError",
    "ParameterError",
    "Perturbed",
    "PreconditionError",
    "Regime",
    "ResolutionError",
    "RunResult",
    "RunState",
    "RunVerdict",
    "ScalingSpec",
    "Scheme",
    "SolverConfig",
    "StepRejectedError",
    "SweepMode",
    "SweepSpec",
    "Verdict",
    "calibrate_interpolation_constant",
    "classify_regime",
    "existence_time_estimate",
    "exponent_ledger",
    "free_space_potential",
    "fujita_exponent",
    "gradient",
    "interpolation_check",
    "kernel_constants",
    "lbeta_bound_check",
    "lk_norm",
    "mass_balance_residual",
    "newtonian_potential",
    "parse_config",
    "parse_sweep_spec",
    "pde_residual",
    "potential_discrepancy",
    "run",
    "sample_profile",
    "scaling_rescale",
    "scaling_solution_test",
    "sobolev_exponent",
    "step",
]
