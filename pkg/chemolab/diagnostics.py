"""Numerical checks of the model's scaling, interpolation and a priori bounds.

Every routine here is a pure function of its inputs. Rescaled initial data
is always obtained by resampling the analytic profile, never by
interpolating grid values.
"""

from __future__ import annotations

import dataclasses
import functools
import math
import typing as typ

import numpy as np

from ._logging import get_logger
from .dynamics import rhs
from .errors import ParameterError, PreconditionError, ResolutionError
from .grid import Field, Grid
from .integrators import RunVerdict, run
from .model import ModelVariant, Verdict, classify_regime, sobolev_exponent
from .profiles import Constant, Gaussian, MultiBump, Perturbed, sample_profile
from .spectral import gradient, lk_norm, nonlocal_mass, positive_power

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .integrators import RunResult, SolverConfig
    from .model import ModelParams
    from .profiles import ProfileSpec

logger = get_logger(__name__)

MIN_CELLS_PER_WIDTH: typ.Final[float] = 4.0
CALIBRATION_SAFETY: typ.Final[float] = 1.0001
LBETA_SLACK: typ.Final[float] = 1e-3
_DEGENERATE_RTOL: typ.Final[float] = 1e-10


# --------------------------------------------------------------------------
# Scaling


@dataclasses.dataclass(frozen=True, slots=True)
class ScalingSpec:
    """Dilation ``u_lam(x, t) = lam**(n/beta) u(lam x, lam**2 t)``."""

    lam: float
    params: ModelParams

    def __post_init__(self) -> None:
        """Keep ``lam`` inside the resolution-safe range ``[1/4, 4]``."""
        if not 0.25 <= self.lam <= 4.0:  # noqa: PLR2004
            msg = f"lam must lie in [1/4, 4], got {self.lam!r}"
            raise ParameterError(msg)

    @property
    def weight(self) -> float:
        """Amplitude factor ``lam**(n/beta)``."""
        return self.lam ** (self.params.n / self.params.beta)


def _narrowest_width(profile: ProfileSpec) -> float:
    match profile:
        case Gaussian(width=width):
            return width
        case MultiBump(bumps=bumps):
            return min(b.width for b in bumps)
        case Perturbed(base=base):
            return _narrowest_width(base)
        case Constant():
            return math.inf


def _require_resolved(profile: ProfileSpec, grid: Grid) -> None:
    width = _narrowest_width(profile)
    if width < MIN_CELLS_PER_WIDTH * grid.spacing:
        msg = (
            f"profile width {width!r} spans fewer than {MIN_CELLS_PER_WIDTH:g} "
            f"cells of size {grid.spacing!r}"
        )
        raise ResolutionError(msg)


def scaling_rescale(profile: ProfileSpec, grid: Grid, spec: ScalingSpec) -> Field:
    """Sample ``lam**(n/beta) * profile(lam x)`` on ``grid``.

    Raises
    ------
    ResolutionError
        If the rescaled profile is narrower than four grid cells.
    PreconditionError
        If ``profile`` has no analytic rescaling.

    """
    scaled = profile.rescaled(spec.lam, spec.weight)
    _require_resolved(scaled, grid)
    return sample_profile(scaled, grid)


def _time_scaled(config: SolverConfig, factor: float, t_end: float) -> SolverConfig:
    return dataclasses.replace(
        config,
        dt_init=config.dt_init * factor,
        dt_min=config.dt_min * factor,
        dt_max=config.dt_max * factor,
        t_end=t_end,
    )


def _evolve(
    profile: ProfileSpec, grid: Grid, params: ModelParams, config: SolverConfig
) -> RunResult:
    params = dataclasses.replace(params, domain_length=grid.L)
    result = run(sample_profile(profile, grid), params, config)
    if result.verdict is not RunVerdict.REACHED_T_END:
        msg = (
            f"scaling run stopped early with {result.verdict} at "
            f"t={result.t_final!r}; choose milder data or a shorter t_probe"
        )
        raise PreconditionError(msg)
    return result


def scaling_solution_test(  # noqa: PLR0913
    profile: ProfileSpec,
    spec: ScalingSpec,
    t_probe: float,
    *,
    grid: Grid,
    config: SolverConfig,
) -> float:
    """Return the relative ``L²`` gap between evolving rescaled data and rescaling.

    The rescaled problem runs on the torus of side ``L / lam`` with the same
    ``N``, so its nodes are exactly the images of the original nodes and no
    interpolation is needed. Step-size limits of the rescaled run are
    divided by ``lam**2``.

    Raises
    ------
    PreconditionError
        If ``sigma + 1 != alpha`` or the regime is neither ``GlobalCase1``
        nor ``Critical``, or if either run stops before ``t_end``.
    ResolutionError
        If the rescaled profile is narrower than four grid cells.

    """
    regime = classify_regime(spec.params)
    allowed = {Verdict.GLOBAL_CASE_1, Verdict.CRITICAL}
    if not regime.holds("order_balance") or regime.verdict not in allowed:
        msg = (
            "scaling covariance is tested only for sigma + 1 == alpha in the "
            f"GlobalCase1 or Critical regime, got {regime.verdict}"
        )
        raise PreconditionError(msg)
    if spec.lam == 1.0:
        return 0.0
    scaled_grid = Grid(N=grid.N, L=grid.L / spec.lam)
    scaled_profile = profile.rescaled(spec.lam, spec.weight)
    _require_resolved(scaled_profile, scaled_grid)
    base = _evolve(
        profile,
        grid,
        spec.params,
        dataclasses.replace(config, t_end=spec.lam**2 * t_probe),
    )
    scaled = _evolve(
        scaled_profile,
        scaled_grid,
        spec.params,
        _time_scaled(config, spec.lam**-2, t_probe),
    )
    reference = spec.weight * base.final_state.values
    gap = float(np.linalg.norm(scaled.final_state.values - reference))
    scale = float(np.linalg.norm(reference))
    residual = gap / scale if scale > 0 else gap
    logger.info(f"scaling test lam={spec.lam!r} residual={residual!r}")
    return residual


# --------------------------------------------------------------------------
# Interpolation inequality


@dataclasses.dataclass(frozen=True, slots=True)
class InterpolationCheck:
    """One evaluation of ``|v|_q**q <= C C0**(-e) |v|_r**gamma + C0 |∇v|_2**2``.

    ``e = lambda_interp q / (2 - lambda_interp q)``; ``margin = rhs - lhs``.
    """

    r: float
    q: float
    c0: float
    constant: float
    lambda_interp: float
    gamma: float
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        """``rhs - lhs``."""
        return self.rhs - self.lhs


def interpolation_exponents(r: float, q: float, n: int) -> tuple[float, float]:
    """Return ``(lambda, gamma)`` for the index pair ``(r, q)``.

    Raises
    ------
    ParameterError
        If ``1 <= r < q < p`` or ``q/r < 2/r + 1 - 2/p`` fails; the message
        names the violated inequality.

    """
    p = sobolev_exponent(n)
    if not 1 <= r < q < p:
        msg = f"indices must satisfy 1 <= r < q < p = {p:g}, got r={r!r}, q={q!r}"
        raise ParameterError(msg)
    if not q / r < 2 / r + 1 - 2 / p:
        msg = f"indices must satisfy q/r < 2/r + 1 - 2/p, got r={r!r}, q={q!r}"
        raise ParameterError(msg)
    weight = (1 / r - 1 / q) / (1 / r - 1 / p)
    gamma = 2 * (1 - weight) * q / (2 - weight * q)
    return weight, gamma


def _gradient_energy(v: Field) -> float:
    return sum(float(np.sum(c.values**2)) for c in gradient(v)) * v.grid.cell_volume


def _young_exponent(weight: float, q: float) -> float:
    return weight * q / (2 - weight * q)


def interpolation_check(  # noqa: PLR0913
    v: Field,
    r: float,
    q: float,
    c0: float,
    params: ModelParams,
    *,
    constant: float | None = None,
) -> InterpolationCheck:
    """Evaluate both sides of the interpolation inequality for ``v``.

    ``constant`` defaults to the value fitted by
    :func:`calibrate_interpolation_constant` on the default probe family for
    ``v``'s grid.
    """
    if not c0 > 0:
        msg = f"C0 must be positive, got {c0!r}"
        raise ParameterError(msg)
    weight, gamma = interpolation_exponents(r, q, params.n)
    if constant is None:
        constant = default_interpolation_constant(v.grid, params)
    lhs = lk_norm(v, q) ** q
    rhs_value = constant * c0 ** (-_young_exponent(weight, q)) * lk_norm(
        v, r
    ) ** gamma + c0 * _gradient_energy(v)
    return InterpolationCheck(
        r=r,
        q=q,
        c0=c0,
        constant=constant,
        lambda_interp=weight,
        gamma=gamma,
        lhs=lhs,
        rhs=rhs_value,
    )


@dataclasses.dataclass(frozen=True, slots=True)
class ProbeFamily:
    """Gaussian probes used to fit the interpolation constant."""

    widths: tuple[float, ...] = (0.5, 1.0, 2.0)
    c0_values: tuple[float, ...] = (0.1, 1.0, 10.0)
    index_pairs: tuple[tuple[float, float], ...] = ((1.0, 2.0), (1.5, 2.5), (2.0, 3.0))


@dataclasses.dataclass(frozen=True, slots=True)
class Calibration:
    """Fitted constant and the probe that forced it."""

    constant: float
    worst_width: float
    worst_c0: float
    worst_pair: tuple[float, float]
    probes: int


def _probe_ratios(
    v: Field, params: ModelParams, family: ProbeFamily
) -> cabc.Iterator[tuple[float, float, tuple[float, float]]]:
    """Yield ``(ratio, C0, (r, q))`` for one probe field."""
    energy = _gradient_energy(v)
    for r, q in family.index_pairs:
        weight, gamma = interpolation_exponents(r, q, params.n)
        lhs = lk_norm(v, q) ** q
        base = lk_norm(v, r) ** gamma
        for c0 in family.c0_values:
            scale = c0 ** (-_young_exponent(weight, q)) * base
            yield (lhs - c0 * energy) / scale, c0, (r, q)


def calibrate_interpolation_constant(
    grid: Grid, params: ModelParams, family: ProbeFamily | None = None
) -> Calibration:
    """Fit the smallest constant that makes every probe margin non-negative.

    The constant is the largest ratio
    ``(lhs - C0 |∇v|²) / (C0**(-e) |v|_r**gamma)`` over the family, times
    :data:`CALIBRATION_SAFETY`. Widths the grid cannot represent are skipped.

    Raises
    ------
    ResolutionError
        If no probe width fits on ``grid``.

    """
    family = family or ProbeFamily()
    widths = [
        w
        for w in family.widths
        if MIN_CELLS_PER_WIDTH * grid.spacing <= w <= grid.L / 8
    ]
    if not widths:
        msg = f"no probe width of {family.widths} fits on a grid with L={grid.L!r}"
        raise ResolutionError(msg)
    probes = [
        (ratio, width, c0, pair)
        for width in widths
        for ratio, c0, pair in _probe_ratios(
            sample_profile(Gaussian(1.0, width), grid), params, family
        )
    ]
    ratio, width, c0, pair = max(probes, key=lambda probe: probe[0])
    return Calibration(
        constant=max(ratio, 0.0) * CALIBRATION_SAFETY,
        worst_width=width,
        worst_c0=c0,
        worst_pair=pair,
        probes=len(probes),
    )


@functools.cache
def default_interpolation_constant(grid: Grid, params: ModelParams) -> float:
    """Return the constant fitted on the default probe family (cached)."""
    return calibrate_interpolation_constant(grid, params).constant


# --------------------------------------------------------------------------
# L^beta a priori bound


def lbeta_bound(result: RunResult, params: ModelParams) -> float:
    """Return ``max(∫u0**beta, 1 + (beta-1)/(beta+sigma-1))``.

    Raises
    ------
    PreconditionError
        Unless ``sigma + 1 == alpha``, the only case the bound covers.

    """
    if not classify_regime(params).holds("order_balance"):
        msg = (
            "the L^beta bound holds only for sigma + 1 == alpha, got "
            f"sigma={params.sigma!r}, alpha={params.alpha!r}"
        )
        raise PreconditionError(msg)
    level = 1.0 + (params.beta - 1.0) / (params.beta + params.sigma - 1.0)
    return max(result.trace[0].nonlocal_mass, level)


def lbeta_bound_check(result: RunResult, params: ModelParams) -> bool:
    """Return whether every trace sample obeys ``∫u**beta <= bound + 1e-3``."""
    bound = lbeta_bound(result, params) + LBETA_SLACK
    return all(row.nonlocal_mass <= bound for row in result.trace)


# --------------------------------------------------------------------------
# Residuals


@dataclasses.dataclass(frozen=True, slots=True)
class PdeResidual:
    """Residual of one step; ``absolute`` marks the zero-right-hand-side case."""

    value: float
    absolute: bool


def _midpoint(u_before: Field, u_after: Field) -> Field:
    if u_before.grid != u_after.grid:
        msg = "states live on different grids"
        raise ParameterError(msg)
    return Field(u_before.grid, 0.5 * (u_before.values + u_after.values))


def pde_residual(
    u_before: Field, u_after: Field, dt: float, params: ModelParams
) -> PdeResidual:
    """Return ``|(u_after - u_before)/dt - rhs(mid)| / |rhs(mid)|`` in ``L²``.

    When ``rhs(mid)`` vanishes to rounding the absolute residual is returned
    with ``absolute=True``.
    """
    if not dt > 0:
        msg = f"dt must be positive, got {dt!r}"
        raise ParameterError(msg)
    middle = _midpoint(u_before, u_after)
    drive = rhs(middle, params)
    quotient = (u_after.values - u_before.values) / dt
    gap = lk_norm(Field(middle.grid, quotient - drive.values), 2.0)
    scale = lk_norm(drive, 2.0)
    if scale <= _DEGENERATE_RTOL * lk_norm(middle, 2.0):
        return PdeResidual(value=gap, absolute=True)
    return PdeResidual(value=gap / scale, absolute=False)


def mass_balance_residual(
    u_before: Field, u_after: Field, dt: float, params: ModelParams
) -> float:
    """Return the relative mismatch of the mass change against the reaction.

    Diffusion and aggregation conserve mass on the torus, so
    ``(∫u_after - ∫u_before)/dt`` must match ``∫ū**alpha (1 - ∫ū**beta)``
    at the midpoint ``ū``. A vanishing prediction yields the absolute gap.
    """
    if not dt > 0:
        msg = f"dt must be positive, got {dt!r}"
        raise ParameterError(msg)
    middle = _midpoint(u_before, u_after)
    volume = middle.grid.cell_volume
    observed = (float(np.sum(u_after.values)) - float(np.sum(u_before.values))) * (
        volume / dt
    )
    if params.variant is ModelVariant.AGGREGATION:
        predicted = 0.0
    else:
        growth = float(np.sum(positive_power(middle.values, params.alpha))) * volume
        death = (
            nonlocal_mass(middle, params.beta)
            if params.variant is ModelVariant.FULL
            else 0.0
        )
        predicted = growth * (1.0 - death)
    gap = abs(observed - predicted)
    return gap / abs(predicted) if predicted != 0 else gap


__all__ = [
    "CALIBRATION_SAFETY",
    "Calibration",
    "InterpolationCheck",
    "PdeResidual",
    "ProbeFamily",
    "ScalingSpec",
    "calibrate_interpolation_constant",
    "default_interpolation_constant",
    "interpolation_check",
    "interpolation_exponents",
    "lbeta_bound",
    "lbeta_bound_check",
    "mass_balance_residual",
    "pde_residual",
    "scaling_rescale",
    "scaling_solution_test",
]
