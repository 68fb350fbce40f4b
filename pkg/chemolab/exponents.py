"""Derived exponents of the L^k energy estimate.

The a priori bound on ``∫u**k`` combines two interpolation inequalities,
one for the growth term and one for the aggregation term, and closes only
when ``k`` is large enough. :func:`exponent_ledger` evaluates every derived
exponent of that argument for one ``(params, k)`` pair and reports the
admissibility conditions as booleans together with their signed margins.

No result is ever a silent infinity: a vanishing denominator raises
:class:`~chemolab.errors.DegenerateLedgerError` naming the quantity.
"""

from __future__ import annotations

import dataclasses
import math
import typing as typ

from .errors import DegenerateLedgerError, ParameterError
from .model import ModelParams, sobolev_exponent

_DENOMINATOR_ATOL: typ.Final[float] = 1e-14


def _ratio(quantity: str, numerator: float, denominator: float) -> float:
    if abs(denominator) <= _DENOMINATOR_ATOL * max(1.0, abs(numerator)):
        raise DegenerateLedgerError(quantity, denominator)
    return numerator / denominator


@dataclasses.dataclass(frozen=True, slots=True)
class ExponentLedger:
    """Every derived exponent for one ``(params, k)`` pair.

    ``growth_condition`` is ``alpha < 1 + (1 - 2/p) beta`` and
    ``aggregation_condition`` is ``a1 (1 - 1/p) < a0``. ``k_admissible``
    requires ``k > max(k0, beta - alpha + 1)``. ``kprime_bracketed`` reports
    whether ``k_prime`` lies strictly inside the window in which both
    interpolation weights fall in ``(0, 1)``.
    """

    params: ModelParams
    p: float
    k: float
    k_prime: float
    theta: float
    b_alpha: float
    b_eta: float
    lambda_alpha: float
    lambda_eta: float
    a0: float
    a1: float
    d: float
    b: float
    k0: float
    growth_condition: bool
    aggregation_condition: bool
    k_admissible: bool
    kprime_bracketed: bool
    growth_margin: float
    aggregation_margin: float
    k_margin: float

    @property
    def all_flags(self) -> bool:
        """Return whether every admissibility flag holds."""
        return (
            self.growth_condition
            and self.aggregation_condition
            and self.k_admissible
            and self.kprime_bracketed
        )

    def d_over_b(self) -> float:
        """Return ``d / b``; it equals ``beta - alpha + 1`` identically."""
        return _ratio("d/b", self.d, self.b)

    def identity_residual(self) -> float:
        """Return ``d/b - (beta - (alpha - 1))``."""
        return self.d_over_b() - (self.params.beta - (self.params.alpha - 1.0))


@dataclasses.dataclass(frozen=True, slots=True)
class _Indices:
    k: float
    k_prime: float
    p: float

    def weight(self, exponent: float, name: str) -> float:
        top = self.k + exponent - 1.0
        share = self.k / (2.0 * self.k_prime)
        numerator = share - _ratio(name, self.k, 2.0 * top)
        return _ratio(name, numerator, share - 1.0 / self.p)

    def interpolated(self, weight: float, exponent: float, name: str) -> float:
        top = self.k + exponent - 1.0
        return _ratio(name, (1.0 - weight) * top, 1.0 - weight * top / self.k)


class _EnergyTerms(typ.NamedTuple):
    a0: float
    a1: float
    d: float
    b: float
    k0: float


def _energy_terms(params: ModelParams, p: float) -> _EnergyTerms:
    alpha, beta, eta = params.alpha, params.beta, params.eta
    a0 = 0.5 - 1.0 / p - (alpha - 1.0) / (2.0 * beta)
    a1 = (eta - alpha) / beta
    k0 = max(
        2.0 * (eta - 1.0) / (p - 2.0),
        2.0 * (alpha - 1.0) / (p - 2.0),
        2.0 * p * (eta - 1.0) / (p - 2.0) - beta - (alpha - 1.0),
        2.0 * p * (alpha - 1.0) / (p - 2.0) - beta - (alpha - 1.0),
    )
    mass = alpha + beta - 1.0
    d = a0 * (mass / 2.0 - (eta - 1.0)) - a1 * mass / (2.0 * p)
    b = a0 / 2.0 - a1 * (0.5 - 1.0 / (2.0 * p))
    return _EnergyTerms(a0, a1, d, b, k0)


def kprime_window(params: ModelParams, k: float) -> tuple[float, float]:
    """Return the open interval that ``k_prime`` must lie in."""
    p = sobolev_exponent(params.n)
    alpha, eta = params.alpha, params.eta
    lower = max(
        p * (eta - 1.0) / (p - 2.0),
        p * (alpha - 1.0) / (p - 2.0),
        1.0,
        k / 2.0,
    )
    upper = min(k + alpha - 1.0, k + eta - 1.0)
    return lower, upper


def exponent_ledger(params: ModelParams, k: float) -> ExponentLedger:
    """Evaluate the exponent ledger for ``params`` at index ``k``.

    Parameters
    ----------
    params
        Model exponents; ``params.n`` may be any dimension of at least 3.
    k
        The ``L^k`` index, ``k > 1``.

    Raises
    ------
    ParameterError
        If ``k <= 1``.
    DegenerateLedgerError
        If any closed-form exponent has a vanishing denominator.

    Examples
    --------
    >>> ledger = exponent_ledger(ModelParams(n=3, sigma=1, alpha=2, beta=3), 4)
    >>> ledger.p, ledger.k_prime, round(ledger.theta, 12)
    (6.0, 4.0, 0.625)

    """
    if not math.isfinite(k) or k <= 1:
        msg = f"k must exceed 1, got {k!r}"
        raise ParameterError(msg)
    alpha, beta = params.alpha, params.beta
    p = sobolev_exponent(params.n)
    k_prime = (k + alpha - 1.0 + beta) / 2.0
    theta = _ratio(
        "theta",
        1.0 / beta - 1.0 / k_prime,
        1.0 / beta - 1.0 / (k + alpha - 1.0),
    )
    indices = _Indices(k, k_prime, p)
    lambda_alpha = indices.weight(alpha, "lambda_alpha")
    lambda_eta = indices.weight(params.eta, "lambda_eta")
    energy = _energy_terms(params, p)
    lower, upper = kprime_window(params, k)
    growth_margin = 1.0 + (1.0 - 2.0 / p) * beta - alpha
    aggregation_margin = energy.a0 - energy.a1 * (1.0 - 1.0 / p)
    k_margin = k - max(energy.k0, beta - (alpha - 1.0))
    return ExponentLedger(
        params=params,
        p=p,
        k=k,
        k_prime=k_prime,
        theta=theta,
        b_alpha=indices.interpolated(lambda_alpha, alpha, "b_alpha"),
        b_eta=indices.interpolated(lambda_eta, params.eta, "b_eta"),
        lambda_alpha=lambda_alpha,
        lambda_eta=lambda_eta,
        a0=energy.a0,
        a1=energy.a1,
        d=energy.d,
        b=energy.b,
        k0=energy.k0,
        growth_condition=growth_margin > 0,
        aggregation_condition=aggregation_margin > 0,
        k_admissible=k_margin > 0,
        kprime_bracketed=lower < k_prime < upper,
        growth_margin=growth_margin,
        aggregation_margin=aggregation_margin,
        k_margin=k_margin,
    )


__all__ = ["ExponentLedger", "exponent_ledger", "kprime_window"]
