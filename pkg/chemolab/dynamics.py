"""Right-hand side of the nonlocal chemotaxis-growth equation.

``u_t = Δu - ∇·(u**sigma ∇v) + u**alpha (1 - ∫u**beta)`` with ``v`` the
Newtonian potential of ``u``. The stiff diffusion is kept separate from the
nonlinear part so that the integrators can treat it exactly.
"""

from __future__ import annotations

import dataclasses
import typing as typ

import numpy as np

from .errors import NonFiniteError
from .grid import Field
from .model import ModelParams, ModelVariant
from .spectral import (
    dealias,
    gradient,
    linf_norm,
    newtonian_potential,
    nonlocal_mass,
    positive_power,
    to_spectral,
)

if typ.TYPE_CHECKING:
    from .grid import ComplexArray, FloatArray


@dataclasses.dataclass(frozen=True, slots=True)
class ModelTerms:
    """Switches for the individual terms; tests use them to isolate physics."""

    diffusion: bool = True
    chemotaxis: bool = True
    reaction: bool = True

    def for_variant(self, variant: ModelVariant) -> ModelTerms:
        """Return the switches restricted to what ``variant`` evolves."""
        return ModelTerms(
            diffusion=self.diffusion,
            chemotaxis=self.chemotaxis and variant is not ModelVariant.FUJITA,
            reaction=self.reaction and variant is not ModelVariant.AGGREGATION,
        )


ALL_TERMS: typ.Final[ModelTerms] = ModelTerms()


def _require_finite(values: FloatArray | ComplexArray, term: str) -> None:
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(term)


def growth_factor(u: Field, params: ModelParams) -> float:
    """Return ``1 - ∫u**beta`` (or ``1`` when the death term is absent)."""
    if params.variant is ModelVariant.FUJITA:
        return 1.0
    return 1.0 - nonlocal_mass(u, params.beta)


def chemotaxis_spectral(u: Field, params: ModelParams) -> ComplexArray:
    """Return the coefficients of ``-∇·(u**sigma ∇v)``, dealiased."""
    grid = u.grid
    weight = positive_power(u.values, params.sigma)
    total = np.zeros_like(u.spectral)
    components = gradient(newtonian_potential(u))
    for symbol, component in zip(grid.derivative_symbols, components, strict=True):
        flux = weight * component.values
        _require_finite(flux, "chemotaxis")
        total -= symbol * dealias(to_spectral(flux), grid)
    return total


def reaction_spectral(u: Field, params: ModelParams) -> ComplexArray:
    """Return the coefficients of ``u**alpha (1 - ∫u**beta)``, dealiased."""
    reaction = positive_power(u.values, params.alpha) * growth_factor(u, params)
    _require_finite(reaction, "reaction")
    return dealias(to_spectral(reaction), u.grid)


def nonlinear_spectral(
    u: Field, params: ModelParams, terms: ModelTerms = ALL_TERMS
) -> ComplexArray:
    """Return the coefficients of every active term except diffusion."""
    active = terms.for_variant(params.variant)
    total = np.zeros_like(u.spectral)
    if active.chemotaxis:
        total += chemotaxis_spectral(u, params)
    if active.reaction:
        total += reaction_spectral(u, params)
    return total


def diffusion_symbol(u: Field, terms: ModelTerms = ALL_TERMS) -> FloatArray:
    """Return the Fourier symbol of the linear part, ``-|xi|**2`` or zero."""
    if terms.diffusion:
        return -u.grid.xi_squared
    return np.zeros_like(u.grid.xi_squared)


def rhs(u: Field, params: ModelParams, terms: ModelTerms = ALL_TERMS) -> Field:
    """Evaluate the full right-hand side at ``u``.

    Raises
    ------
    NonFiniteError
        If a term produces NaN or an infinity; the error names the term.

    """
    _require_finite(u.values, "diffusion")
    coefficients = nonlinear_spectral(u, params, terms)
    coefficients = coefficients + diffusion_symbol(u, terms) * u.spectral
    return Field.from_spectral(u.grid, coefficients)


def transport_speed(u: Field, params: ModelParams) -> float:
    """Return ``max |u**sigma ∇v|``, the largest chemotactic flux."""
    if params.variant is ModelVariant.FUJITA:
        return 0.0
    components = gradient(newtonian_potential(u))
    magnitude = np.sqrt(sum(c.values**2 for c in components))
    weight = positive_power(u.values, params.sigma)
    return float(np.max(weight * magnitude))


def reaction_rate(u: Field, params: ModelParams) -> float:
    """Return ``alpha * max(u)**(alpha-1) * (1 + ∫u**beta)``."""
    if params.variant is ModelVariant.AGGREGATION:
        return 0.0
    full = params.variant is ModelVariant.FULL
    death = nonlocal_mass(u, params.beta) if full else 0.0
    return params.alpha * linf_norm(u) ** (params.alpha - 1.0) * (1.0 + death)


__all__ = [
    "ALL_TERMS",
    "ModelTerms",
    "chemotaxis_spectral",
    "diffusion_symbol",
    "growth_factor",
    "nonlinear_spectral",
    "reaction_rate",
    "reaction_spectral",
    "rhs",
    "transport_speed",
]
