"""End-to-end acceptance properties of the numerical lab."""

from __future__ import annotations

import typing as typ

import numpy as np
import pytest

from chemolab import cli
from chemolab.diagnostics import ScalingSpec, lbeta_bound_check, scaling_solution_test
from chemolab.grid import Grid
from chemolab.integrators import BLOWUP_MESSAGE, RunVerdict, Scheme, SolverConfig, run
from chemolab.model import ModelParams, Verdict, classify_regime
from chemolab.profiles import Gaussian, sample_profile
from chemolab.spectral import lk_norm

if typ.TYPE_CHECKING:
    from pathlib import Path

    from tests.conftest import ConfigWriter

pytestmark = pytest.mark.acceptance

CANNED_BUMP = Gaussian(0.5, 4.0 / 3.0)


@pytest.mark.slow
@pytest.mark.timeout(120)
def test_imex2_and_duhamel_cross_validate(case1_params: ModelParams) -> None:
    """The two second-order schemes agree to 1e-5 in ``L∞`` at ``t = 0.1``."""
    grid = Grid(N=64, L=16.0)
    u0 = sample_profile(CANNED_BUMP, grid)
    finals = [
        run(
            u0, case1_params, SolverConfig(t_end=0.1, dt_max=2.5e-3, scheme=scheme)
        ).final_state.values
        for scheme in (Scheme.IMEX2, Scheme.DUHAMEL)
    ]
    gap = float(np.max(np.abs(finals[0] - finals[1])))
    assert gap / float(np.max(np.abs(finals[0]))) < 1e-5


def test_lbeta_bound_along_a_long_run(medium_grid: Grid) -> None:
    """``∫u³`` stays below ``5/3 + 1e-3`` for data with ``∫u0³ < 1.4``."""
    params = ModelParams(n=3, sigma=1, alpha=2, beta=3, domain_length=medium_grid.L)
    u0 = sample_profile(CANNED_BUMP, medium_grid)
    assert lk_norm(u0, 3.0) ** 3 < 1.4
    result = run(u0, params, SolverConfig(t_end=5.0, dt_max=0.05))
    assert result.verdict is RunVerdict.REACHED_T_END
    assert lbeta_bound_check(result, params)
    assert max(row.nonlocal_mass for row in result.trace) <= 5.0 / 3.0 + 1e-3


@pytest.mark.slow
@pytest.mark.timeout(600)
def test_solution_covariance_on_a_fine_grid() -> None:
    """At the balance point the rescaled evolution matches to 5e-4."""
    params = ModelParams(n=3, sigma=2, alpha=3, beta=3)
    assert classify_regime(params).verdict is Verdict.CRITICAL
    residual = scaling_solution_test(
        Gaussian(0.5, 1.0),
        ScalingSpec(1.5, params),
        0.05,
        grid=Grid(N=128, L=16.0),
        config=SolverConfig(),
    )
    assert residual < 5e-4


@pytest.mark.parametrize(
    ("sigma", "alpha", "beta", "verdict"),
    [
        (1.0, 2.0, 3.0, Verdict.GLOBAL_CASE_1),
        (1.0, 2.0, 4.0, Verdict.GLOBAL_CASE_1),
        (2.0, 2.0, 5.0, Verdict.GLOBAL_CASE_2),
    ],
)
def test_global_regimes_stay_bounded(
    medium_grid: Grid, sigma: float, alpha: float, beta: float, verdict: Verdict
) -> None:
    """After ``t = 1`` the peak never exceeds three times its early maximum."""
    params = ModelParams(
        n=3, sigma=sigma, alpha=alpha, beta=beta, domain_length=medium_grid.L
    )
    assert classify_regime(params).verdict is verdict
    u0 = sample_profile(CANNED_BUMP, medium_grid)
    result = run(u0, params, SolverConfig(t_end=5.0, dt_max=0.05))
    assert result.verdict is RunVerdict.REACHED_T_END
    early = max(row.linf for row in result.trace if row.t <= 1.0)
    late = [row.linf for row in result.trace if row.t > 1.0]
    assert late
    assert max(late) <= 3.0 * early


def test_concentrated_data_in_the_blowup_regime_stops(medium_grid: Grid) -> None:
    """A tall bump with ``sigma + 1 = alpha`` supercritical halts the run."""
    params = ModelParams(n=3, sigma=3, alpha=4, beta=3, domain_length=medium_grid.L)
    assert classify_regime(params).verdict is Verdict.CONJECTURED_BLOWUP
    u0 = sample_profile(Gaussian(20.0, 1.0), medium_grid)
    result = run(u0, params, SolverConfig())
    assert result.verdict in {RunVerdict.BLOWUP_DETECTED, RunVerdict.DT_UNDERFLOW}
    assert BLOWUP_MESSAGE in result.message


@pytest.mark.concurrency
def test_repeated_sweeps_are_byte_identical(
    tmp_path: Path, write_config: ConfigWriter
) -> None:
    """Two CLI sweeps with the same inputs and seed write the same bytes."""
    spec = write_config(
        {
            "axes": {"beta": {"min": 2.0, "max": 3.0, "steps": 3}},
            "fixed": {"sigma": 1.0, "alpha": 2.0},
            "mode": "Simulate",
            "per_cell": {
                "grid": {"N": 16, "L": 16.0},
                "solver": {"t_end": 0.05},
                "profile": {
                    "kind": "constant",
                    "value": 0.05,
                    "noise": {"amplitude": 0.2, "seed": 1},
                },
            },
        },
        name="sweep.json",
    )
    tables = []
    for name, threads in (("first.csv", "1"), ("second.csv", "3")):
        argv = ["sweep", str(spec), "--out", str(tmp_path), "--table", name]
        assert cli.main([*argv, "--seed", "11", "--threads", threads]) == cli.EXIT_OK
        tables.append((tmp_path / name).read_bytes())
    assert tables[0] == tables[1]
    assert tables[0].startswith(b"# seed=11\n")
