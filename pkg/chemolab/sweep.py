"""Phase-diagram sweeps over the model exponents.

Cells are independent, so they run on a bounded thread pool. numpy and
scipy.fft release the GIL inside their kernels, which is where simulate
cells spend their time. Rows are collected by cell index, so the output
does not depend on the worker count.
"""

from __future__ import annotations

import concurrent.futures as cf
import csv
import dataclasses
import itertools
import numbers
import typing as typ

from ._logging import get_logger, log_context
from .config import SweepMode
from .errors import ChemolabError
from .integrators import run
from .model import ModelParams, ModelVariant, classify_regime
from .profiles import sample_profile

if typ.TYPE_CHECKING:
    import collections.abc as cabc
    from pathlib import Path

    from .config import SweepSpec
    from .integrators import RunResult

logger = get_logger(__name__)

MARGIN_NAMES: typ.Final[tuple[str, ...]] = (
    "case1_order",
    "case1_growth",
    "case2_order",
    "case2_growth",
    "critical",
)
CLASSIFY_COLUMNS: typ.Final[tuple[str, ...]] = (
    "cell",
    "n",
    "sigma",
    "alpha",
    "beta",
    "verdict",
    *(f"margin_{name}" for name in MARGIN_NAMES),
    "error",
)
SIMULATE_COLUMNS: typ.Final[tuple[str, ...]] = (
    "run_verdict",
    "t_final",
    "l1",
    "lbeta",
    "lbam1",
    "linf",
    "nonlocal_mass",
)

Row: typ.TypeAlias = tuple[str, ...]


def _number(value: object) -> str:
    return repr(float(typ.cast("float", value)))


def sweep_columns(mode: SweepMode) -> tuple[str, ...]:
    """Return the CSV header for ``mode``."""
    if mode is SweepMode.SIMULATE:
        return CLASSIFY_COLUMNS + SIMULATE_COLUMNS
    return CLASSIFY_COLUMNS


def cell_values(spec: SweepSpec) -> list[dict[str, object]]:
    """Return the model settings of every cell, in cell order.

    Each cell starts from the template's model, then applies ``fixed`` and
    finally the axis values.
    """
    template = spec.per_cell.model
    base: dict[str, object] = {
        "n": template.n,
        "sigma": template.sigma,
        "alpha": template.alpha,
        "beta": template.beta,
        "variant": template.variant,
        **spec.fixed,
    }
    names = [axis.name for axis in spec.axes]
    return [
        {**base, **dict(zip(names, combo, strict=True))}
        for combo in itertools.product(*(axis.values() for axis in spec.axes))
    ]


def _simulate_cells(result: RunResult) -> Row:
    last = result.trace[-1]
    return (
        str(result.verdict),
        _number(last.t),
        _number(last.l1),
        _number(last.lbeta),
        _number(last.lbam1),
        _number(last.linf),
        _number(last.nonlocal_mass),
    )


def _text(value: object) -> str:
    if isinstance(value, numbers.Real) and not isinstance(value, bool):
        return repr(float(value))
    return str(value)


def _cell_params(spec: SweepSpec, values: cabc.Mapping[str, object]) -> ModelParams:
    settings = dict(values)
    settings["variant"] = ModelVariant(settings["variant"])
    return ModelParams(
        **typ.cast("dict[str, typ.Any]", settings),
        domain_length=spec.per_cell.grid.L,
    )


def _classify_cells(params: ModelParams) -> Row:
    regime = classify_regime(params)
    return (
        str(regime.verdict),
        *(_number(regime.margin(name)) for name in MARGIN_NAMES),
    )


def evaluate_cell(
    spec: SweepSpec, index: int, values: cabc.Mapping[str, object]
) -> Row:
    """Classify (and in Simulate mode run) one cell.

    Failures are recorded in the ``error`` column and never propagate; the
    columns computed before the failure are kept.
    """
    head = (str(index), *(_text(values[k]) for k in ("n", "sigma", "alpha", "beta")))
    middle: Row = ("",) * (1 + len(MARGIN_NAMES))
    tail: Row = ("",) * len(SIMULATE_COLUMNS) if spec.mode is SweepMode.SIMULATE else ()
    try:
        params = _cell_params(spec, values)
        middle = _classify_cells(params)
        if spec.mode is SweepMode.SIMULATE:
            u0 = sample_profile(spec.per_cell.profile, spec.per_cell.grid)
            with log_context(cell=index):
                tail = _simulate_cells(run(u0, params, spec.per_cell.solver))
    except (ChemolabError, TypeError, ValueError) as exc:
        logger.error(f"sweep cell failed cell={index} error={exc}")
        return (*head, *middle, str(exc), *tail)
    return (*head, *middle, "", *tail)


def run_sweep(spec: SweepSpec, threads: int = 1) -> list[Row]:
    """Evaluate every cell on ``threads`` workers; rows come back in cell order.

    Raises
    ------
    ValueError
        If ``threads`` is less than one.

    """
    if threads < 1:
        msg = f"threads must be at least 1, got {threads}"
        raise ValueError(msg)
    cells = cell_values(spec)
    logger.info(
        f"sweep started cells={len(cells)} mode={spec.mode} threads={threads}"
    )
    with cf.ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {
            pool.submit(evaluate_cell, spec, index, values): index
            for index, values in enumerate(cells)
        }
        rows: dict[int, Row] = {}
        for future in cf.as_completed(futures):
            rows[futures[future]] = future.result()
    logger.info(f"sweep finished cells={len(cells)}")
    return [rows[index] for index in range(len(cells))]


@dataclasses.dataclass(frozen=True, slots=True)
class SweepTable:
    """Header and rows of a finished sweep."""

    columns: tuple[str, ...]
    rows: tuple[Row, ...]

    def column(self, name: str) -> tuple[str, ...]:
        """Return one column by header name."""
        position = self.columns.index(name)
        return tuple(row[position] for row in self.rows)

    def failed_cells(self) -> tuple[int, ...]:
        """Indices of the cells whose ``error`` column is set."""
        cells = zip(self.column("cell"), self.column("error"), strict=True)
        return tuple(int(cell) for cell, error in cells if error)


def sweep_table(spec: SweepSpec, threads: int = 1) -> SweepTable:
    """Run the sweep and pair the rows with their header."""
    return SweepTable(sweep_columns(spec.mode), tuple(run_sweep(spec, threads)))


def write_sweep_csv(table: SweepTable, path: Path, seed: int | None = None) -> None:
    """Write the sweep table with a leading ``# seed=<seed>`` comment line."""
    with path.open("w", newline="", encoding="utf-8") as handle:
        handle.write(f"# seed={'none' if seed is None else seed}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(table.columns)
        writer.writerows(table.rows)


__all__ = [
    "CLASSIFY_COLUMNS",
    "MARGIN_NAMES",
    "SIMULATE_COLUMNS",
    "Row",
    "SweepTable",
    "cell_values",
    "evaluate_cell",
    "run_sweep",
    "sweep_columns",
    "sweep_table",
    "write_sweep_csv",
]
