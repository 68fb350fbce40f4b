"""Shared BDD steps reused across feature modules."""

from __future__ import annotations

import dataclasses
import typing as typ

from pytest_bdd import parsers, then

from chemolab.errors import ChemolabError

T = typ.TypeVar("T")


@dataclasses.dataclass(slots=True, frozen=True)
class Outcome(typ.Generic[T]):
    """Result of a ``When`` step: either a value or the error it raised."""

    value: T | None = None
    error: ChemolabError | None = None

    @classmethod
    def of(cls, action: typ.Callable[[], T]) -> Outcome[T]:
        """Run ``action`` and capture its value or chemolab error."""
        try:
            return cls(value=action())
        except ChemolabError as exc:
            return cls(error=exc)

    def unwrap(self) -> T:
        """Return the value, failing the scenario if an error was raised."""
        assert self.error is None, f"unexpected error: {self.error}"
        return typ.cast("T", self.value)


@then(parsers.parse('the error mentions "{first}" and "{second}"'))
def error_mentions_both(outcome: Outcome[object], first: str, second: str) -> None:
    assert outcome.error is not None
    assert first in str(outcome.error)
    assert second in str(outcome.error)
