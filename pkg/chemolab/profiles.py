"""Analytic initial profiles and their exact rescalings.

Profiles are described by small immutable specs so that scaling tests can
resample the analytic expression at rescaled arguments instead of
interpolating grid data.
"""

from __future__ import annotations

import dataclasses
import math
import typing as typ

import numpy as np

from .errors import ParameterError, PreconditionError
from .grid import Field, Grid

if typ.TYPE_CHECKING:
    from .grid import FloatArray

Point: typ.TypeAlias = tuple[float, float, float]

MAX_WIDTH_FRACTION: typ.Final[float] = 1.0 / 8.0
"""Largest Gaussian width allowed, as a fraction of the torus side."""


@dataclasses.dataclass(frozen=True, slots=True)
class Gaussian:
    """``amplitude * exp(-|x - center|**2 / (2 width**2))``."""

    amplitude: float = 1.0
    width: float = 1.0
    center: Point = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        """Reject non-positive widths and negative amplitudes."""
        if not self.width > 0:
            msg = f"gaussian width must be positive, got {self.width!r}"
            raise ParameterError(msg)
        if not self.amplitude >= 0:
            msg = f"gaussian amplitude must be non-negative, got {self.amplitude!r}"
            raise ParameterError(msg)

    def mass(self) -> float:
        """Whole-space integral of the bump."""
        return self.amplitude * (2.0 * math.pi * self.width**2) ** 1.5

    def evaluate(self, grid: Grid) -> FloatArray:
        """Sample the nearest periodic image on ``grid``."""
        limit = MAX_WIDTH_FRACTION * grid.L
        if self.width > limit * (1.0 + 1e-12):
            msg = (
                f"gaussian width {self.width!r} exceeds L/8 = {limit!r}; "
                "the nearest-image periodization would be inaccurate"
            )
            raise ParameterError(msg)
        radius = grid.radius(self.center)
        return self.amplitude * np.exp(-(radius**2) / (2.0 * self.width**2))

    def rescaled(self, factor: float, weight: float) -> Gaussian:
        """Return ``weight * profile(factor * x)`` as a new spec."""
        return Gaussian(
            amplitude=self.amplitude * weight,
            width=self.width / factor,
            center=(
                self.center[0] / factor,
                self.center[1] / factor,
                self.center[2] / factor,
            ),
        )


@dataclasses.dataclass(frozen=True, slots=True)
class MultiBump:
    """Sum of Gaussian bumps."""

    bumps: tuple[Gaussian, ...]

    def __post_init__(self) -> None:
        """Require at least one bump."""
        if not self.bumps:
            msg = "multi_bump needs at least one bump"
            raise ParameterError(msg)

    def mass(self) -> float:
        """Sum of the bump masses."""
        return sum(bump.mass() for bump in self.bumps)

    def evaluate(self, grid: Grid) -> FloatArray:
        """Sample every bump and add them."""
        return sum(
            (bump.evaluate(grid) for bump in self.bumps), start=np.zeros(grid.shape)
        )

    def rescaled(self, factor: float, weight: float) -> MultiBump:
        """Rescale every bump."""
        return MultiBump(tuple(b.rescaled(factor, weight) for b in self.bumps))


@dataclasses.dataclass(frozen=True, slots=True)
class Constant:
    """Homogeneous field."""

    value: float

    def __post_init__(self) -> None:
        """Reject negative values."""
        if not self.value >= 0:
            msg = f"constant profile must be non-negative, got {self.value!r}"
            raise ParameterError(msg)

    def evaluate(self, grid: Grid) -> FloatArray:
        """Fill the grid with ``value``."""
        return np.full(grid.shape, float(self.value))

    def rescaled(self, factor: float, weight: float) -> Constant:
        """Scale the level by ``weight``."""
        return Constant(self.value * weight)


@dataclasses.dataclass(frozen=True, slots=True)
class Perturbed:
    """``base * (1 + amplitude * xi)`` with ``xi`` uniform on ``[-1, 1]``.

    ``xi`` is drawn from a ``numpy.random.Generator`` seeded with the 64-bit
    ``seed`` and the product is clamped at zero.
    """

    base: Gaussian | MultiBump | Constant
    amplitude: float
    seed: int

    def __post_init__(self) -> None:
        """Validate the noise amplitude and seed."""
        if not 0 <= self.amplitude <= 1:
            msg = f"noise amplitude must lie in [0, 1], got {self.amplitude!r}"
            raise ParameterError(msg)
        if not 0 <= self.seed < 2**64:
            msg = f"seed must be a 64-bit unsigned integer, got {self.seed!r}"
            raise ParameterError(msg)

    def evaluate(self, grid: Grid) -> FloatArray:
        """Sample the base profile and apply the seeded perturbation."""
        rng = np.random.default_rng(self.seed)
        noise = rng.uniform(-1.0, 1.0, size=grid.shape)
        perturbed = self.base.evaluate(grid) * (1.0 + self.amplitude * noise)
        return np.maximum(perturbed, 0.0)

    def rescaled(self, factor: float, weight: float) -> typ.NoReturn:
        """Perturbed profiles have no analytic rescaling."""
        msg = (
            f"cannot rescale a noise-perturbed profile (factor={factor!r}, "
            f"weight={weight!r}); rescale the noise-free base instead"
        )
        raise PreconditionError(msg)


ProfileSpec: typ.TypeAlias = Gaussian | MultiBump | Constant | Perturbed


def sample_profile(spec: ProfileSpec, grid: Grid) -> Field:
    """Return ``spec`` sampled on ``grid``.

    Examples
    --------
    >>> field = sample_profile(Constant(2.0), Grid(N=16, L=8.0))
    >>> float(field.values.min()), float(field.values.max())
    (2.0, 2.0)

    """
    return Field(grid, spec.evaluate(grid))


__all__ = [
    "MAX_WIDTH_FRACTION",
    "Constant",
    "Gaussian",
    "MultiBump",
    "Perturbed",
    "ProfileSpec",
    "sample_profile",
]
