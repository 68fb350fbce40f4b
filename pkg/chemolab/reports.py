"""JSON check records and CSV trace files.

Floats are written with :func:`repr` of a builtin ``float`` so identical
runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import typing as typ

if typ.TYPE_CHECKING:
    import collections.abc as cabc
    from pathlib import Path

    from .integrators import RunResult, Scheme

InputValue: typ.TypeAlias = str | float | int | bool | None

TRACE_COLUMNS: typ.Final[tuple[str, ...]] = (
    "t",
    "dt",
    "l1",
    "lbeta",
    "lbam1",
    "linf",
    "nonlocal_mass",
    "scheme",
)


@dataclasses.dataclass(frozen=True, slots=True)
class CheckReport:
    """Outcome of one named property check.

    ``margin`` is ``rhs - lhs`` for inequality checks and the negated
    residual for identity checks, so ``passed`` always means
    ``margin >= 0`` unless the check says otherwise.
    """

    check_name: str
    inputs: cabc.Mapping[str, InputValue]
    lhs: float
    rhs: float
    margin: float
    passed: bool

    def to_json(self) -> dict[str, object]:
        """Return the record with ``passed`` under the key ``pass``."""
        return {
            "check_name": self.check_name,
            "inputs": dict(self.inputs),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
        }


def write_check_reports(reports: cabc.Iterable[CheckReport], path: Path) -> None:
    """Write ``reports`` to ``path`` as a JSON array."""
    # Non-finite margins from failed checks are written as ``NaN``/``Infinity``.
    payload = [report.to_json() for report in reports]
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _cell(value: float) -> str:
    return repr(float(value))


def write_trace_csv(
    result: RunResult, path: Path, scheme: Scheme, seed: int | None = None
) -> None:
    """Write the run trace with a leading ``# seed=<seed>`` comment line."""
    with path.open("w", newline="", encoding="utf-8") as handle:
        handle.write(f"# seed={'none' if seed is None else seed}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        writer.writerows(
            [
                _cell(row.t),
                _cell(row.dt),
                _cell(row.l1),
                _cell(row.lbeta),
                _cell(row.lbam1),
                _cell(row.linf),
                _cell(row.nonlocal_mass),
                str(scheme),
            ]
            for row in result.trace
        )


__all__ = [
    "TRACE_COLUMNS",
    "CheckReport",
    "InputValue",
    "write_check_reports",
    "write_trace_csv",
]
