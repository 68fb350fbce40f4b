"""Model parameters and regime classification.

Everything here is plain arithmetic on the exponents ``(n, sigma, alpha,
beta)``; no grids are involved. The classifier maps every valid parameter
tuple to exactly one :class:`Verdict` and records each inequality it
evaluated, with a signed margin, so that sweeps can draw phase boundaries
from margin sign changes.
"""

from __future__ import annotations

import dataclasses
import enum
import math
import numbers
import typing as typ

from .errors import ParameterError

if typ.TYPE_CHECKING:
    import collections.abc as cabc

EQUALITY_RTOL: typ.Final[float] = 1e-9
"""Relative tolerance used when two exponent expressions must coincide."""

_EQUALITY_ATOL: typ.Final[float] = 1e-12


class ModelVariant(enum.StrEnum):
    """Which right-hand side the integrators evolve.

    ``FULL`` is the nonlocal chemotaxis-growth system. ``FUJITA`` keeps only
    diffusion and the local growth ``u**alpha``; ``AGGREGATION`` keeps only
    diffusion and the chemotactic drift. The two reduced models are the
    comparison cases that show what the nonlocal death term contributes.
    """

    FULL = "full"
    FUJITA = "fujita"
    AGGREGATION = "aggregation"


class Verdict(enum.StrEnum):
    """Regime of an exponent tuple."""

    GLOBAL_CASE_1 = "GlobalCase1"
    GLOBAL_CASE_2 = "GlobalCase2"
    CRITICAL = "Critical"
    CONJECTURED_BLOWUP = "ConjecturedBlowup"
    INDETERMINATE = "Indeterminate"


VERDICT_PRECEDENCE: typ.Final[tuple[Verdict, ...]] = (
    Verdict.CRITICAL,
    Verdict.CONJECTURED_BLOWUP,
    Verdict.GLOBAL_CASE_1,
    Verdict.GLOBAL_CASE_2,
    Verdict.INDETERMINATE,
)
"""Order in which verdicts are tested; the first match wins."""


_STANDING = " (standing hypotheses: alpha > 1, beta > 1, sigma >= 1)"
_HYPOTHESES: typ.Final[dict[str, str]] = {
    "sigma": _STANDING,
    "alpha": _STANDING,
    "beta": _STANDING,
    "domain_length": "",
}


def _is_real(value: object) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _dimension_problem(n: object) -> str | None:
    if not isinstance(n, numbers.Integral) or isinstance(n, bool):
        return f"n must be an integer, got {n!r}"
    if int(n) < 3:  # noqa: PLR2004
        return f"n must be at least 3, got {n}"
    return None


def parameter_violations(values: cabc.Mapping[str, object]) -> list[tuple[str, str]]:
    """Return ``(field, message)`` pairs for every violated standing hypothesis.

    ``values`` maps ``n``, ``sigma``, ``alpha``, ``beta`` and ``domain_length``
    to candidate values; missing keys count as violations.

    Used both by :class:`ModelParams` and by the configuration layer, which
    needs all problems at once rather than the first one.
    """
    problems: list[tuple[str, str]] = []
    dimension = _dimension_problem(values.get("n"))
    if dimension is not None:
        problems.append(("n", dimension))
    bounds: tuple[tuple[str, object, str, float, bool], ...] = (
        ("sigma", values.get("sigma"), "sigma must be at least 1", 1.0, True),
        ("alpha", values.get("alpha"), "alpha must exceed 1", 1.0, False),
        ("beta", values.get("beta"), "beta must exceed 1", 1.0, False),
        (
            "domain_length",
            values.get("domain_length"),
            "domain_length must be positive",
            0.0,
            False,
        ),
    )
    for name, value, message, floor, inclusive in bounds:
        if not _is_real(value):
            problems.append((name, f"{name} must be a real number, got {value!r}"))
            continue
        number = float(typ.cast("float", value))
        ok = number >= floor if inclusive else number > floor
        if not math.isfinite(number) or not ok:
            problems.append((name, f"{message}, got {value!r}{_HYPOTHESES[name]}"))
    return problems


@dataclasses.dataclass(frozen=True, slots=True)
class ModelParams:
    """Exponents, dimension and torus side of one model instance.

    Attributes
    ----------
    n
        Space dimension, at least 3. Simulation supports only ``n == 3``.
    sigma
        Aggregation exponent, ``sigma >= 1``.
    alpha
        Growth exponent, ``alpha > 1``.
    beta
        Exponent of the nonlocal consumption integral, ``beta > 1``.
    domain_length
        Torus side ``L`` used to approximate the whole space.
    variant
        Which right-hand side the integrators evolve.

    """

    n: int = 3
    sigma: float = 1.0
    alpha: float = 2.0
    beta: float = 3.0
    domain_length: float = 16.0
    variant: ModelVariant = ModelVariant.FULL

    def __post_init__(self) -> None:
        """Reject tuples outside the standing hypotheses."""
        problems = parameter_violations({
            "n": self.n,
            "sigma": self.sigma,
            "alpha": self.alpha,
            "beta": self.beta,
            "domain_length": self.domain_length,
        })
        if problems:
            msg = "; ".join(message for _, message in problems)
            raise ParameterError(msg)

    @property
    def eta(self) -> float:
        """Combined aggregation exponent ``sigma + 1``."""
        return self.sigma + 1.0


@dataclasses.dataclass(frozen=True, slots=True)
class Inequality:
    """One inequality evaluated by the classifier.

    ``margin`` is signed so that ``margin > 0`` means the strict form holds;
    equalities report the signed difference of their two sides.
    """

    name: str
    statement: str
    margin: float
    holds: bool


@dataclasses.dataclass(frozen=True, slots=True)
class Regime:
    """Classifier output: a verdict plus the evidence behind it."""

    verdict: Verdict
    witness: tuple[Inequality, ...]
    precedence: tuple[Verdict, ...] = VERDICT_PRECEDENCE

    def margin(self, name: str) -> float:
        """Return the margin of the witness inequality called ``name``."""
        for item in self.witness:
            if item.name == name:
                return item.margin
        msg = f"no witness inequality named {name!r}"
        raise KeyError(msg)

    def holds(self, name: str) -> bool:
        """Return whether the witness inequality called ``name`` holds."""
        return next(item.holds for item in self.witness if item.name == name)


def sobolev_exponent(n: int) -> float:
    """Return the Sobolev exponent ``2n / (n - 2)``.

    Raises
    ------
    ParameterError
        If ``n < 3``; the exponent and the Newtonian kernel are undefined.

    """
    problem = _dimension_problem(n)
    if problem is not None:
        raise ParameterError(problem)
    return 2.0 * n / (n - 2)


def fujita_exponent(n: int) -> float:
    """Return the critical growth exponent ``1 + 2/n`` of ``u_t = Δu + u**alpha``."""
    sobolev_exponent(n)
    return 1.0 + 2.0 / n


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=EQUALITY_RTOL, abs_tol=_EQUALITY_ATOL)


def _witness(params: ModelParams) -> tuple[Inequality, ...]:
    n, alpha, beta, eta = params.n, params.alpha, params.beta, params.eta
    balance = 2.0 * beta / n
    order_equal = _close(eta, alpha)
    critical_equal = _close(alpha - 1.0, balance)
    case2_margin = (2.0 * beta + 2.0 * alpha + n) - eta * (n + 2)
    return (
        Inequality(
            "case1_order",
            "sigma + 1 <= alpha",
            alpha - eta,
            order_equal or eta < alpha,
        ),
        Inequality(
            "case1_growth",
            "alpha < 1 + 2*beta/n",
            1.0 + balance - alpha,
            not critical_equal and alpha - 1.0 < balance,
        ),
        Inequality(
            "case2_order",
            "alpha < sigma + 1",
            eta - alpha,
            not order_equal and alpha < eta,
        ),
        Inequality(
            "case2_growth",
            "(sigma + 1)(n + 2) < 2*beta + 2*alpha + n",
            case2_margin,
            case2_margin > 0,
        ),
        Inequality(
            "order_balance",
            "sigma + 1 == alpha",
            eta - alpha,
            order_equal,
        ),
        Inequality(
            "critical",
            "alpha - 1 == 2*beta/n",
            (alpha - 1.0) - balance,
            critical_equal,
        ),
        Inequality(
            "fujita",
            "alpha > 1 + 2/n",
            alpha - fujita_exponent(n),
            alpha > fujita_exponent(n),
        ),
        Inequality(
            "local_theory",
            "beta > n/2",
            beta - n / 2.0,
            beta > n / 2.0,
        ),
    )


def classify_regime(params: ModelParams) -> Regime:
    """Classify ``params`` into exactly one regime.

    Verdicts are tested in :data:`VERDICT_PRECEDENCE` order. Equalities
    between exponent expressions use :data:`EQUALITY_RTOL`.

    Examples
    --------
    >>> classify_regime(ModelParams(n=3, sigma=1, alpha=2, beta=3)).verdict
    <Verdict.GLOBAL_CASE_1: 'GlobalCase1'>
    >>> classify_regime(ModelParams(n=3, sigma=3, alpha=4, beta=3)).verdict
    <Verdict.CONJECTURED_BLOWUP: 'ConjecturedBlowup'>

    """
    witness = _witness(params)
    regime = Regime(Verdict.INDETERMINATE, witness)
    balanced = regime.holds("order_balance")
    supercritical = regime.margin("critical") > 0
    if balanced and regime.holds("critical"):
        verdict = Verdict.CRITICAL
    elif balanced and supercritical:
        verdict = Verdict.CONJECTURED_BLOWUP
    elif regime.holds("case1_order") and regime.holds("case1_growth"):
        verdict = Verdict.GLOBAL_CASE_1
    elif regime.holds("case2_order") and regime.holds("case2_growth"):
        verdict = Verdict.GLOBAL_CASE_2
    else:
        verdict = Verdict.INDETERMINATE
    return dataclasses.replace(regime, verdict=verdict)


__all__ = [
    "EQUALITY_RTOL",
    "VERDICT_PRECEDENCE",
    "Inequality",
    "ModelParams",
    "ModelVariant",
    "Regime",
    "Verdict",
    "classify_regime",
    "fujita_exponent",
    "parameter_violations",
    "sobolev_exponent",
]
