"""Command-line entry point.

Subcommands ``classify``, ``simulate``, ``sweep``, ``check`` and
``scaling-test``. Exit codes: 0 success, 1 check or validation failure,
2 I/O failure, 3 numerical abort.
"""

from __future__ import annotations

import argparse
import csv
import sys
import typing as typ
from pathlib import Path

from ._logging import LEVELS, configure, get_logger
from .checks import CHECKS, failing_checks, run_checks
from .config import output_root, parse_config, parse_sweep_spec
from .diagnostics import ScalingSpec, scaling_solution_test
from .errors import ChemolabError, ConfigError, DegenerateLedgerError, NonFiniteError
from .field_io import write_field_binary
from .integrators import run
from .model import ModelParams, classify_regime
from .profiles import Perturbed, sample_profile
from .reports import CheckReport, write_check_reports, write_trace_csv
from .sweep import MARGIN_NAMES, sweep_table, write_sweep_csv

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .profiles import ProfileSpec

logger = get_logger(__name__)

EXIT_OK: typ.Final[int] = 0
EXIT_FAILURE: typ.Final[int] = 1
EXIT_IO: typ.Final[int] = 2
EXIT_NUMERICAL: typ.Final[int] = 3

SCALING_TOLERANCE: typ.Final[float] = 5e-4


class _Parser(argparse.ArgumentParser):
    """Usage errors count as validation failures, not I/O failures."""

    def error(self, message: str) -> typ.NoReturn:
        """Print usage and exit with the validation failure code."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILURE, f"{self.prog}: error: {message}\n")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--out",
        type=Path,
        default=None,
        help="directory for relative output paths (default: $CHEMOLAB_OUTPUT_DIR)",
    )
    common.add_argument("--threads", type=int, default=1, help="sweep workers")
    common.add_argument(
        "--seed", type=int, default=None, help="seed for profile noise"
    )
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=LEVELS,
        help="stderr logging threshold",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser for ``chemolab``."""
    common = _common_flags()
    parser = _Parser(
        prog="chemolab", description="Nonlocal chemotaxis-growth numerical lab."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser(
        "classify", parents=[common], help="classify one exponent tuple"
    )
    classify.add_argument("--n", type=int, default=3)
    classify.add_argument("--sigma", type=float, required=True)
    classify.add_argument("--alpha", type=float, required=True)
    classify.add_argument("--beta", type=float, required=True)

    simulate = commands.add_parser(
        "simulate", parents=[common], help="run one experiment"
    )
    simulate.add_argument("config", type=Path)

    sweep = commands.add_parser(
        "sweep", parents=[common], help="phase-diagram sweep"
    )
    sweep.add_argument("spec", type=Path)
    sweep.add_argument("--table", type=Path, default=Path("sweep.csv"))

    check = commands.add_parser(
        "check", parents=[common], help="run the property suite"
    )
    check.add_argument("--only", action="append", choices=sorted(CHECKS))
    check.add_argument("--report", type=Path, default=Path("check_report.json"))

    scaling = commands.add_parser(
        "scaling-test", parents=[common], help="solution scaling covariance"
    )
    scaling.add_argument("config", type=Path)
    scaling.add_argument("--lam", type=float, default=1.5)
    scaling.add_argument("--t-probe", type=float, default=0.05)
    scaling.add_argument("--tolerance", type=float, default=SCALING_TOLERANCE)
    return parser


def _write_line(cells: cabc.Iterable[object]) -> None:
    csv.writer(sys.stdout, lineterminator="\n").writerow(cells)


def _prepared(path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _profile_seed(profile: ProfileSpec, override: int | None) -> int | None:
    if override is not None:
        return override
    return profile.seed if isinstance(profile, Perturbed) else None


def cmd_classify(args: argparse.Namespace) -> int:
    """Print one CSV row with the verdict and the signed margins."""
    params = ModelParams(n=args.n, sigma=args.sigma, alpha=args.alpha, beta=args.beta)
    regime = classify_regime(params)
    _write_line([
        "n",
        "sigma",
        "alpha",
        "beta",
        "verdict",
        *(f"margin_{name}" for name in MARGIN_NAMES),
    ])
    _write_line([
        params.n,
        repr(params.sigma),
        repr(params.alpha),
        repr(params.beta),
        str(regime.verdict),
        *(repr(regime.margin(name)) for name in MARGIN_NAMES),
    ])
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    """Run one experiment and write its trace (and field dump)."""
    config = parse_config(args.config, seed=args.seed)
    root = output_root(args.out)
    outputs = config.outputs.resolved(root)
    u0 = sample_profile(config.profile, config.grid)
    result = run(u0, config.model, config.solver)
    trace_path = _prepared(outputs.trace_path or root / "trace.csv")
    seed = _profile_seed(config.profile, args.seed)
    write_trace_csv(result, trace_path, config.solver.scheme, seed)
    if outputs.field_dump:
        dump = _prepared(root / "final_field.bin")
        write_field_binary(result.final_state, dump, result.t_final)
    sys.stdout.write(f"{result.verdict} t={result.t_final!r} {result.message}\n")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Run a sweep and write the phase-diagram table."""
    spec = parse_sweep_spec(args.spec, seed=args.seed)
    table = sweep_table(spec, threads=args.threads)
    path = _prepared(output_root(args.out) / args.table)
    seed = _profile_seed(spec.per_cell.profile, args.seed)
    write_sweep_csv(table, path, seed)
    failed = len(table.failed_cells())
    sys.stdout.write(f"wrote {len(table.rows)} cells to {path} ({failed} failed)\n")
    return EXIT_OK


def _finish(reports: list[CheckReport], path: Path) -> int:
    write_check_reports(reports, _prepared(path))
    failed = failing_checks(reports)
    if failed:
        sys.stdout.write(f"FAILED: {', '.join(failed)}\n")
        return EXIT_FAILURE
    sys.stdout.write(f"all {len(reports)} checks passed\n")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    """Run the property suite; exit 1 naming every failing check."""
    reports = run_checks(args.only)
    return _finish(reports, output_root(args.out) / args.report)


def cmd_scaling_test(args: argparse.Namespace) -> int:
    """Compare an evolved rescaled profile against the rescaled evolution."""
    config = parse_config(args.config, seed=args.seed)
    root = output_root(args.out)
    spec = ScalingSpec(args.lam, config.model)
    residual = scaling_solution_test(
        config.profile, spec, args.t_probe, grid=config.grid, config=config.solver
    )
    report = CheckReport(
        "scaling_solution",
        {
            "lam": args.lam,
            "t_probe": args.t_probe,
            "sigma": config.model.sigma,
            "alpha": config.model.alpha,
            "beta": config.model.beta,
            "N": config.grid.N,
        },
        residual,
        args.tolerance,
        args.tolerance - residual,
        residual <= args.tolerance,
    )
    path = config.outputs.resolved(root).report_path or root / "scaling_report.json"
    sys.stdout.write(f"residual={residual!r}\n")
    return _finish([report], path)


_COMMANDS: typ.Final[dict[str, cabc.Callable[[argparse.Namespace], int]]] = {
    "classify": cmd_classify,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "check": cmd_check,
    "scaling-test": cmd_scaling_test,
}


def main(argv: cabc.Sequence[str] | None = None) -> int:
    """Parse ``argv``, dispatch, and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    configure(args.log_level)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        for violation in exc.violations:
            sys.stderr.write(f"config error: {violation}\n")
        return EXIT_FAILURE
    except (NonFiniteError, DegenerateLedgerError) as exc:
        logger.error(f"numerical abort command={args.command} error={exc}")
        sys.stderr.write(f"numerical abort: {exc}\n")
        return EXIT_NUMERICAL
    except (ChemolabError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAILURE
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO


__all__ = [
    "EXIT_FAILURE",
    "EXIT_IO",
    "EXIT_NUMERICAL",
    "EXIT_OK",
    "build_parser",
    "cmd_check",
    "cmd_classify",
    "cmd_scaling_test",
    "cmd_simulate",
    "cmd_sweep",
    "main",
]
