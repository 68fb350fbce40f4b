"""Spectral operators and quadrature norms on the periodic grid.

All derivatives are exact multiplications in Fourier space. The Newtonian
potential is taken in the mean-zero gauge, ``-Δv = u - mean(u)``; only its
gradient enters the dynamics. Norms use the rectangle rule, which is
spectrally accurate for smooth periodic integrands.
"""

from __future__ import annotations

import math
import typing as typ

import numpy as np
from scipy import fft as sp_fft

from .errors import ParameterError
from .grid import Field, Grid

if typ.TYPE_CHECKING:
    from .grid import ComplexArray, FloatArray

AXES: typ.Final[tuple[int, int, int]] = (0, 1, 2)


def to_spectral(values: FloatArray) -> ComplexArray:
    """Return the ``rfftn`` coefficients of ``values``."""
    return sp_fft.rfftn(values, axes=AXES)


def from_spectral(coefficients: ComplexArray, grid: Grid) -> FloatArray:
    """Return the real samples whose coefficients are ``coefficients``."""
    return sp_fft.irfftn(coefficients, s=grid.shape, axes=AXES)


def dealias(coefficients: ComplexArray, grid: Grid) -> ComplexArray:
    """Apply the two-thirds truncation mask to ``coefficients``."""
    return coefficients * grid.dealias_mask


def positive_power(values: FloatArray, exponent: float) -> FloatArray:
    """Return ``max(values, 0) ** exponent``.

    Integer exponents use integer powers, which numpy evaluates by repeated
    multiplication.
    """
    base = np.maximum(values, 0.0)
    if float(exponent).is_integer():
        return base ** int(exponent)
    return np.power(base, exponent)


def _potential_coefficients(u: Field) -> ComplexArray:
    xi2 = u.grid.xi_squared
    safe = np.where(xi2 > 0, xi2, 1.0)
    return np.where(xi2 > 0, u.spectral / safe, 0.0)


def newtonian_potential(u: Field) -> Field:
    """Return ``v`` with ``v_hat = u_hat / |xi|**2`` and ``v_hat(0) = 0``.

    Examples
    --------
    >>> import numpy as np
    >>> grid = Grid(N=16, L=2 * np.pi)
    >>> x, _, _ = grid.mesh
    >>> u = Field(grid, np.broadcast_to(np.cos(x), grid.shape))
    >>> bool(np.allclose(newtonian_potential(u).values, u.values))
    True

    """
    return Field.from_spectral(u.grid, _potential_coefficients(u))


def free_space_potential(u: Field, radius: float | None = None) -> Field:
    """Return the whole-space Newtonian potential of a compactly supported field.

    Uses the kernel ``1/(4π|x|)`` truncated at ``radius`` (default ``L/2``),
    whose transform ``2 sin²(|xi| R / 2) / |xi|**2`` is smooth. The result
    equals the free-space potential at every point ``x`` with
    ``|x| + support radius <= radius``.
    """
    grid = u.grid
    reach = grid.L / 2 if radius is None else radius
    if not math.isfinite(reach) or not 0 < reach <= grid.L / 2:
        msg = f"radius must lie in (0, L/2], got {radius!r}"
        raise ParameterError(msg)
    xi2 = grid.xi_squared
    xi = np.sqrt(xi2)
    safe = np.where(xi2 > 0, xi2, 1.0)
    kernel = np.where(xi2 > 0, 2.0 * np.sin(xi * reach / 2) ** 2 / safe, reach**2 / 2)
    return Field.from_spectral(grid, u.spectral * kernel)


def gradient(v: Field) -> tuple[Field, Field, Field]:
    """Return the three components of ``∇v`` by spectral differentiation."""
    grid = v.grid
    sx, sy, sz = grid.derivative_symbols
    return (
        Field.from_spectral(grid, sx * v.spectral),
        Field.from_spectral(grid, sy * v.spectral),
        Field.from_spectral(grid, sz * v.spectral),
    )


def divergence(components: tuple[Field, Field, Field]) -> Field:
    """Return ``∇·F`` for the vector field ``components``."""
    grid = components[0].grid
    total = sum(
        (
            symbol * component.spectral
            for symbol, component in zip(
                grid.derivative_symbols, components, strict=True
            )
        ),
        start=np.zeros_like(components[0].spectral),
    )
    return Field.from_spectral(grid, total)


def laplacian(u: Field) -> Field:
    """Return ``Δu``."""
    return Field.from_spectral(u.grid, -u.grid.xi_squared * u.spectral)


def lk_norm(u: Field, k: float) -> float:
    """Return the quadrature ``L^k`` norm ``(Σ |u|**k h**3) ** (1/k)``.

    Raises
    ------
    ParameterError
        If ``k < 1``.

    """
    if not k >= 1:
        msg = f"k must be at least 1, got {k!r}"
        raise ParameterError(msg)
    total = float(np.sum(positive_power(np.abs(u.values), k))) * u.grid.cell_volume
    return total ** (1.0 / k)


def linf_norm(u: Field) -> float:
    """Return ``max |u|``."""
    return float(np.max(np.abs(u.values)))


def nonlocal_mass(u: Field, beta: float) -> float:
    """Return the consumption integral ``Σ max(u, 0)**beta h**3``.

    The integrand is not dealiased. The rectangle rule only sees the zero
    Fourier mode of ``u**beta``, and the two-thirds mask keeps that mode, so
    truncating first would return the same value.
    """
    return float(np.sum(positive_power(u.values, beta))) * u.grid.cell_volume


def potential_discrepancy(u: Field) -> float:
    """Return the relative ``L²`` gap between torus and free-space ``∇v``.

    The comparison is restricted to the ball of radius ``L/4`` about the
    origin, where the free-space evaluation is exact for data supported in
    the same ball.
    """
    grid = u.grid
    torus = gradient(newtonian_potential(u))
    free = gradient(free_space_potential(u))
    window = grid.radius() <= grid.L / 4
    gap = sum(
        float(np.sum((a.values - b.values)[window] ** 2))
        for a, b in zip(torus, free, strict=True)
    )
    scale = sum(float(np.sum(b.values[window] ** 2)) for b in free)
    if scale == 0.0:
        return 0.0
    return math.sqrt(gap / scale)


__all__ = [
    "dealias",
    "divergence",
    "free_space_potential",
    "from_spectral",
    "gradient",
    "laplacian",
    "linf_norm",
    "lk_norm",
    "newtonian_potential",
    "nonlocal_mass",
    "positive_power",
    "potential_discrepancy",
    "to_spectral",
]
