"""Tests for the right-hand side of the evolution equation."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from chemolab.dynamics import (
    ModelTerms,
    growth_factor,
    reaction_rate,
    rhs,
    transport_speed,
)
from chemolab.errors import NonFiniteError
from chemolab.grid import Field, Grid
from chemolab.model import ModelParams, ModelVariant
from chemolab.profiles import Constant, Gaussian, sample_profile
from chemolab.spectral import gradient, lk_norm, newtonian_potential

from tests.helpers import axis_mode


def test_diffusion_only_decays_a_mode(
    medium_grid: Grid, case1_params: ModelParams
) -> None:
    """With every other term off, ``rhs`` is the Laplacian."""
    x, k = axis_mode(medium_grid, 0, 1)
    u = Field(medium_grid, 1.0 + 0.1 * np.cos(k * x))
    terms = ModelTerms(chemotaxis=False, reaction=False)
    result = rhs(u, case1_params, terms)
    np.testing.assert_allclose(result.values, -0.1 * k**2 * np.cos(k * x), atol=1e-12)


def test_homogeneous_state_reduces_to_an_ode(small_grid: Grid) -> None:
    """A constant ``c`` evolves by ``c**alpha (1 - c**beta L**3)``."""
    params = ModelParams(sigma=1.0, alpha=2.0, beta=3.0, domain_length=16.0)
    c = 0.05
    result = rhs(sample_profile(Constant(c), small_grid), params)
    expected = c**2 * (1.0 - c**3 * small_grid.L**3)
    np.testing.assert_allclose(result.values, expected, rtol=1e-12)


def test_homogeneous_steady_state(small_grid: Grid) -> None:
    """``u = L**(-3/beta)`` makes the consumption integral exactly one."""
    params = ModelParams(sigma=1.0, alpha=2.0, beta=3.0)
    level = small_grid.L ** (-3.0 / params.beta)
    u = sample_profile(Constant(level), small_grid)
    assert growth_factor(u, params) == pytest.approx(0.0, abs=1e-12)
    assert float(np.max(np.abs(rhs(u, params).values))) < 1e-12


def test_fujita_variant_has_no_death_or_drift(medium_grid: Grid) -> None:
    """The local comparison model keeps only ``Δu + u**alpha``."""
    params = ModelParams(variant=ModelVariant.FUJITA)
    u = sample_profile(Gaussian(1.0, 2.0), medium_grid)
    assert growth_factor(u, params) == 1.0
    assert transport_speed(u, params) == 0.0
    reaction_only = rhs(u, params, ModelTerms(diffusion=False))
    assert float(reaction_only.values.max()) == pytest.approx(1.0, rel=1e-6)


def test_aggregation_variant_conserves_mass(medium_grid: Grid) -> None:
    """Without reaction the total mass does not change."""
    params = ModelParams(variant=ModelVariant.AGGREGATION)
    u = sample_profile(Gaussian(1.0, 1.5), medium_grid)
    drift = rhs(u, params)
    assert abs(float(np.sum(drift.values))) * medium_grid.cell_volume < 1e-10
    assert reaction_rate(u, params) == 0.0


def test_chemotaxis_pulls_mass_inwards(medium_grid: Grid) -> None:
    """The aggregation term raises a centred bump at its peak."""
    params = ModelParams(variant=ModelVariant.AGGREGATION)
    u = sample_profile(Gaussian(1.0, 1.5), medium_grid)
    drift = rhs(u, params, ModelTerms(diffusion=False))
    assert drift.values[16, 16, 16] > 0


@pytest.mark.parametrize("sigma", [1.0, 2.0, 2.5])
def test_transport_speed_is_the_largest_flux(medium_grid: Grid, sigma: float) -> None:
    """The speed is ``max |u**sigma ∇v|`` over the grid."""
    u = sample_profile(Gaussian(0.5, 1.5), medium_grid)
    components = gradient(newtonian_potential(u))
    magnitude = np.sqrt(sum(c.values**2 for c in components))
    flux = np.maximum(u.values, 0.0) ** sigma * magnitude
    speed = transport_speed(u, ModelParams(sigma=sigma))
    assert speed == pytest.approx(float(flux.max()), rel=1e-12)
    assert speed > 0


def test_transport_speed_grows_with_sensitivity(medium_grid: Grid) -> None:
    """Data above one give a larger flux bound for larger ``sigma``."""
    u = sample_profile(Gaussian(4.0, 1.5), medium_grid)
    linear = transport_speed(u, ModelParams(sigma=1.0))
    quadratic = transport_speed(u, ModelParams(sigma=2.0))
    assert quadratic > linear


def test_reaction_rate_counts_the_death_term(small_grid: Grid) -> None:
    """The stiffness estimate is ``alpha max(u)**(alpha-1) (1 + ∫u**beta)``."""
    params = ModelParams(sigma=1.0, alpha=2.0, beta=3.0)
    u = sample_profile(Constant(0.1), small_grid)
    death = lk_norm(u, 3.0) ** 3
    assert reaction_rate(u, params) == pytest.approx(2.0 * 0.1 * (1.0 + death))
    fujita = dataclasses.replace(params, variant=ModelVariant.FUJITA)
    assert reaction_rate(u, fujita) == pytest.approx(0.2)


def test_non_finite_input_names_the_term(small_grid: Grid) -> None:
    """A NaN in the state is reported, not propagated."""
    values = np.ones(small_grid.shape)
    values[0, 0, 0] = np.nan
    with pytest.raises(NonFiniteError, match="diffusion"):
        rhs(Field(small_grid, values), ModelParams())


def test_overflowing_reaction_names_the_term(small_grid: Grid) -> None:
    """Overflow in the growth term is reported as the reaction term."""
    values = np.full(small_grid.shape, 1e200)
    params = ModelParams(variant=ModelVariant.FUJITA)
    with (
        np.errstate(over="ignore", invalid="ignore"),
        pytest.raises(NonFiniteError, match="reaction") as caught,
    ):
        rhs(Field(small_grid, values), params)
    assert caught.value.term == "reaction"
