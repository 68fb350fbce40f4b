"""Existence-time lower bound from the scalar ODE majorant.

``sup|u(t)|`` is dominated by the solution of ``y' = y**(sigma+1) + y**alpha``
with ``y(0) = sup|u0|``, so the blow-up time of that scalar ODE bounds the
local existence time from below.

The ODE is solved for ``w = log(y / y0)`` against the time unit ``T``, the
smaller of the two single-power blow-up times. Both are then of order one
whatever the size of ``y0``.
"""

from __future__ import annotations

import math
import sys
import typing as typ

from scipy.integrate import solve_ivp

from ._logging import get_logger
from .errors import ChemolabError, ParameterError

if typ.TYPE_CHECKING:
    import numpy as np

    from .model import ModelParams

TAIL_RTOL: typ.Final[float] = 1e-10
"""Integration stops once the bounded remaining time is this fraction of ``t``."""

_LOG_MAX: typ.Final[float] = math.log(sys.float_info.max)

logger = get_logger(__name__)


def _log_tail(log_y: float, exponent: float) -> float:
    # log ∫_y^∞ dz / z**m
    return (1.0 - exponent) * log_y - math.log(exponent - 1.0)


def existence_time_estimate(sup_u0: float, params: ModelParams) -> float:
    """Return the blow-up time of ``y' = y**(sigma+1) + y**alpha``, ``y(0) = sup_u0``.

    The ODE is integrated adaptively (DOP853) until the time left before
    blow-up, bounded by the analytic tail of ``y' = y**m`` for either
    exponent ``m``, falls below :data:`TAIL_RTOL` times the elapsed time.
    That bound is then added to the event time.

    Parameters
    ----------
    sup_u0
        ``sup|u0| >= 0``.
    params
        Supplies ``sigma`` and ``alpha``.

    Returns
    -------
    float
        The estimate. ``math.inf`` when ``sup_u0 == 0``, or when the
        estimate exceeds the largest float.

    Examples
    --------
    >>> from chemolab.model import ModelParams
    >>> round(existence_time_estimate(1.0, ModelParams(sigma=1, alpha=2)), 6)
    0.5

    """
    if not math.isfinite(sup_u0) or sup_u0 < 0:
        msg = f"sup_u0 must be a finite non-negative number, got {sup_u0!r}"
        raise ParameterError(msg)
    if sup_u0 == 0:
        return math.inf
    exponents = (params.eta, params.alpha)
    log_y0 = math.log(sup_u0)
    # y' >= y**m blows up no later than its closed-form time, for either m.
    log_scale = min(_log_tail(log_y0, m) for m in exponents)
    # dw/dtau = sum_m exp(log_c[m] + (m - 1) w), each log_c[m] <= -log(m - 1).
    log_coefficients = [log_scale + (m - 1.0) * log_y0 for m in exponents]

    def rhs(_tau: float, w: np.ndarray) -> list[float]:
        growth = max(float(w[0]), 0.0)
        return [
            sum(
                math.exp(min(log_c + (m - 1.0) * growth, _LOG_MAX - 1.0))
                for log_c, m in zip(log_coefficients, exponents, strict=True)
            )
        ]

    def remaining(growth: float) -> float:
        log_left = min(_log_tail(log_y0 + growth, m) for m in exponents)
        return math.exp(log_left - log_scale)

    def tail_resolved(tau: float, w: np.ndarray) -> float:
        return remaining(float(w[0])) - TAIL_RTOL * tau

    tail_resolved.terminal = True  # pyright: ignore[reportFunctionMemberAccess]
    tail_resolved.direction = -1.0  # pyright: ignore[reportFunctionMemberAccess]

    solution = solve_ivp(
        rhs,
        (0.0, 1.5),
        [0.0],
        method="DOP853",
        rtol=1e-12,
        atol=1e-12,
        events=tail_resolved,
    )
    if solution.status != 1 or not len(solution.t_events[0]):
        msg = f"majorant did not resolve its blow-up: {solution.message}"
        raise ChemolabError(msg)
    hit = float(solution.t_events[0][0])
    growth = float(solution.y_events[0][0][0])
    log_estimate = log_scale + math.log(hit + remaining(growth))
    estimate = math.inf if log_estimate >= _LOG_MAX else math.exp(log_estimate)
    logger.debug(
        f"majorant sup_u0={sup_u0!r} event_tau={hit!r} log_growth={growth!r} "
        f"estimate={estimate!r}"
    )
    return estimate


__all__ = ["TAIL_RTOL", "existence_time_estimate"]
