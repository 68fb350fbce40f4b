"""Uniform periodic grids and the fields sampled on them.

The torus ``[-L/2, L/2)**3`` stands in for the whole space. Spectral arrays
use the ``scipy.fft.rfftn`` layout: full frequency axes for ``x`` and ``y``
and a half axis for ``z``.
"""

from __future__ import annotations

import dataclasses
import functools
import math
import typing as typ

import numpy as np
from scipy import fft as sp_fft
from scipy.special import gamma

from .errors import ParameterError
from .model import sobolev_exponent

if typ.TYPE_CHECKING:
    import numpy.typing as npt

    FloatArray = npt.NDArray[np.float64]
    ComplexArray = npt.NDArray[np.complex128]

MIN_POINTS: typ.Final[int] = 16
NEGATIVITY_BUDGET: typ.Final[float] = 1e-10
"""Relative size of negative ringing tolerated in a physical state."""


@dataclasses.dataclass(frozen=True, slots=True)
class KernelConstants:
    """Constants of the Newtonian kernel ``K(x) = c_n |x|**(2 - n)``.

    ``b_n`` is the volume of the unit ball and ``c_n = 1 / (n (n - 2) b_n)``.
    """

    n: int
    b_n: float
    c_n: float


def kernel_constants(n: int) -> KernelConstants:
    """Return the kernel constants for dimension ``n >= 3``.

    Examples
    --------
    >>> consts = kernel_constants(3)
    >>> abs(consts.c_n * 4 * math.pi - 1) < 1e-14
    True

    """
    sobolev_exponent(n)
    b_n = math.pi ** (n / 2) / float(gamma(n / 2 + 1))
    return KernelConstants(n=n, b_n=b_n, c_n=1.0 / (n * (n - 2) * b_n))


@dataclasses.dataclass(frozen=True)
class Grid:
    """``N**3`` uniform grid on the torus of side ``L``.

    Wavenumber arrays are built lazily and cached on the instance; grids are
    shared between fields, so the cost is paid once per grid.
    """

    N: int
    L: float
    n: int = 3

    def __post_init__(self) -> None:
        """Validate the point count and side length."""
        if isinstance(self.N, bool) or not isinstance(self.N, int):
            msg = f"N must be an integer, got {self.N!r}"
            raise ParameterError(msg)
        if self.N < MIN_POINTS or self.N & (self.N - 1):
            msg = f"N must be a power of two of at least {MIN_POINTS}, got {self.N}"
            raise ParameterError(msg)
        if not math.isfinite(self.L) or self.L <= 0:
            msg = f"L must be positive, got {self.L!r}"
            raise ParameterError(msg)
        if self.n != 3:  # noqa: PLR2004
            msg = f"simulation grids are three-dimensional, got n={self.n}"
            raise ParameterError(msg)

    @property
    def shape(self) -> tuple[int, int, int]:
        """Physical array shape."""
        return (self.N, self.N, self.N)

    @property
    def spacing(self) -> float:
        """Grid spacing ``h = L / N``."""
        return self.L / self.N

    @property
    def cell_volume(self) -> float:
        """Quadrature weight ``h**3``."""
        return self.spacing**3

    @functools.cached_property
    def coordinates(self) -> FloatArray:
        """One-dimensional node positions ``-L/2 + j h``."""
        return -self.L / 2 + self.spacing * np.arange(self.N, dtype=np.float64)

    @functools.cached_property
    def mesh(self) -> tuple[FloatArray, FloatArray, FloatArray]:
        """Coordinate arrays broadcastable against the physical shape."""
        x = self.coordinates
        return (x[:, None, None], x[None, :, None], x[None, None, :])

    @functools.cached_property
    def wavenumbers(self) -> tuple[FloatArray, FloatArray, FloatArray]:
        """Angular wavenumbers per axis in the ``rfftn`` layout."""
        scale = 2 * math.pi
        full = sp_fft.fftfreq(self.N, d=self.spacing) * scale
        half = sp_fft.rfftfreq(self.N, d=self.spacing) * scale
        return (full[:, None, None], full[None, :, None], half[None, None, :])

    @functools.cached_property
    def derivative_symbols(self) -> tuple[ComplexArray, ComplexArray, ComplexArray]:
        """``i * xi_j`` with the Nyquist mode zeroed for odd derivatives."""
        symbols: list[ComplexArray] = []
        for axis, xi in enumerate(self.wavenumbers):
            symbol = 1j * xi.copy()
            nyquist = [slice(None)] * 3
            nyquist[axis] = slice(self.N // 2, self.N // 2 + 1)
            symbol[tuple(nyquist)] = 0.0
            symbols.append(symbol)
        return (symbols[0], symbols[1], symbols[2])

    @functools.cached_property
    def xi_squared(self) -> FloatArray:
        """``|xi|**2`` on the spectral layout."""
        kx, ky, kz = self.wavenumbers
        return kx**2 + ky**2 + kz**2

    @functools.cached_property
    def dealias_mask(self) -> FloatArray:
        """Two-thirds rule: keep modes with every ``|m_j| < N/3``."""
        cutoff = (2.0 / 3.0) * (self.N / 2)
        modes = sp_fft.fftfreq(self.N, d=1.0 / self.N)
        half = sp_fft.rfftfreq(self.N, d=1.0 / self.N)
        keep = np.abs(modes) < cutoff
        keep_half = np.abs(half) < cutoff
        mask = keep[:, None, None] & keep[None, :, None] & keep_half[None, None, :]
        return mask.astype(np.float64)

    def radius(
        self, center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    ) -> FloatArray:
        """Minimum-image distance from ``center`` at every node."""
        total = np.zeros(self.shape)
        for axis, offset in zip(self.mesh, center, strict=True):
            delta = np.mod(axis - offset + self.L / 2, self.L) - self.L / 2
            total = total + delta**2
        return np.sqrt(total)


@dataclasses.dataclass(frozen=True, eq=False)
class Field:
    """Real samples on a :class:`Grid`.

    ``values`` is made read-only on construction; derive new fields instead
    of mutating. The spectral coefficients are computed on first access and
    cached.
    """

    grid: Grid
    values: FloatArray

    def __post_init__(self) -> None:
        """Check the shape and freeze the samples."""
        values = np.array(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            msg = f"field shape {values.shape} does not match grid {self.grid.shape}"
            raise ParameterError(msg)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: Grid) -> Field:
        """Return the zero field on ``grid``."""
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def from_spectral(cls, grid: Grid, coefficients: ComplexArray) -> Field:
        """Return the field whose ``rfftn`` coefficients are ``coefficients``."""
        return cls(grid, sp_fft.irfftn(coefficients, s=grid.shape, axes=(0, 1, 2)))

    @functools.cached_property
    def spectral(self) -> ComplexArray:
        """``rfftn`` coefficients of the samples."""
        coefficients = sp_fft.rfftn(self.values, axes=(0, 1, 2))
        coefficients.setflags(write=False)
        return coefficients

    def is_physical(self, budget: float = NEGATIVITY_BUDGET) -> bool:
        """Return whether ``min >= -budget * max`` (ringing tolerance)."""
        peak = float(np.max(self.values))
        return float(np.min(self.values)) >= -budget * max(peak, 0.0)

    def clamped(self) -> Field:
        """Return a copy with negative samples set to zero."""
        return Field(self.grid, np.maximum(self.values, 0.0))


__all__ = [
    "MIN_POINTS",
    "NEGATIVITY_BUDGET",
    "Field",
    "Grid",
    "KernelConstants",
    "kernel_constants",
]
