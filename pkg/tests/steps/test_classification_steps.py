"""BDD steps for regime classification."""

from __future__ import annotations

import typing as typ
from pathlib import Path

from pytest_bdd import given, parsers, scenarios, then, when

from chemolab.model import ModelParams, classify_regime

from tests.steps.conftest import Outcome

if typ.TYPE_CHECKING:
    from chemolab.model import Regime

FEATURES = Path(__file__).resolve().parents[1] / "features"

scenarios(str(FEATURES / "classification.feature"))


@given(
    parsers.parse(
        "the exponents n={n:d}, sigma={sigma:g}, alpha={alpha:g}, beta={beta:g}"
    ),
    target_fixture="exponents",
)
def given_exponents(
    n: int, sigma: float, alpha: float, beta: float
) -> dict[str, float]:
    return {"n": n, "sigma": sigma, "alpha": alpha, "beta": beta}


@when("I classify the tuple", target_fixture="outcome")
def classify_tuple(exponents: dict[str, float]) -> Outcome[Regime]:
    return Outcome.of(
        lambda: classify_regime(ModelParams(**exponents))  # type: ignore[arg-type]
    )


@then(parsers.parse('the verdict is "{verdict}"'))
def verdict_is(outcome: Outcome[Regime], verdict: str) -> None:
    assert str(outcome.unwrap().verdict) == verdict


@then(parsers.parse('the "{name}" margin is {value:g}'))
def margin_is(outcome: Outcome[Regime], name: str, value: float) -> None:
    assert outcome.unwrap().margin(name) == value


@then(parsers.parse('the "{name}" inequality holds'))
def inequality_holds(outcome: Outcome[Regime], name: str) -> None:
    assert outcome.unwrap().holds(name)


@then(parsers.parse('classification fails mentioning "{fragment}"'))
def classification_fails(outcome: Outcome[Regime], fragment: str) -> None:
    assert outcome.error is not None
    assert fragment in str(outcome.error)
