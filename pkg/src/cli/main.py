"""
Command-line entrypoint for the approximation toolkit.

Subcommands evaluate Jacobi polynomials, print quadrature rules and
expansion coefficients, build approximants, run convergence-rate studies and
run the invariant suites.

Usage:
    jacobi-approx eval --n 5 --x -0.5,0,0.5 --kind J --alpha 0.5
    jacobi-approx rates --fn endpoint:3.75 --op calV --ns 8,16,32,64,128 --out rates.csv
    jacobi-approx verify all --seed 42

Exit codes:
    0: success
    1: a suite or study failed, or a numerical error occurred
    2: invalid arguments or configuration
"""

import argparse
import asyncio
import csv
import os
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from src.cli.schemas import Command, Preset, RunConfig, build_config
from src.config import get_settings
from src.exceptions import ApproximationError, ReportIOError, UsageError
from src.experiments.rates import (
    OPERATORS,
    apply_operator,
    judge_rates,
    judge_suboptimality,
    run_rates,
    suboptimality_study,
)
from src.experiments.registry import registry
from src.experiments.report import emit_report, fmt
from src.jacobi.expansion import expand
from src.jacobi.quadrature import gauss_jacobi
from src.jacobi.sobolev import taylor_remainder_error
from src.jacobi.special import jacobi_J, jacobi_J_extended, jacobi_P
from src.logging_config import configure_logging, get_logger
from src.verify.runner import GROUPS, all_passed, format_table
from src.verify.suite import SuiteContext, SuiteResult
from src.verify.suites import build_runner

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Keys of the argparse namespace that are not RunConfig fields
_LAYER_KEYS = ("command", "config", "preset")


# =============================================================================
# Argument parsing
# =============================================================================


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _shared_flags() -> argparse.ArgumentParser:
    """Flags every subcommand accepts. Unset flags stay out of the namespace."""
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    shared.add_argument("--alpha", type=float, help="Weight exponent at x = 1 (default 0).")
    shared.add_argument("--beta", type=float, help="Weight exponent at x = -1 (default 0).")
    shared.add_argument("--s", type=int, help="Derivative order (default 1).")
    shared.add_argument("--theta", type=float, help="Anchor point in [-1, 1] (default -1).")
    shared.add_argument(
        "--lambdas", type=_float_list, help="Comma-separated point-term weights (default ones)."
    )
    shared.add_argument("--p", dest="pexp", type=float, help="Norm exponent (default 2).")
    shared.add_argument("--out", type=Path, help="Output CSV path (default stdout).")
    shared.add_argument("--seed", type=int, help="Seed of the randomized suites.")
    shared.add_argument("--config", type=Path, help="JSON file of configuration values.")
    shared.add_argument(
        "--preset",
        choices=[str(p) for p in Preset],
        help="Parameter regime: safe (0,0) theta=-1; beta0 (0.5,0); alpha0 (0,0.5) theta=1.",
    )
    shared.add_argument(
        "--literal-h",
        "--paper-literal-h",
        dest="literal_h",
        action="store_true",
        help="Use the h_n normalization without the 4^n factor (the h-norm suite then fails).",
    )
    shared.add_argument(
        "--plot-script", action="store_true", help="Also write a gnuplot script next to the CSV."
    )
    shared.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level (default from LOG_LEVEL).",
    )
    return shared


def build_parser() -> argparse.ArgumentParser:
    """The top-level parser with one subparser per command."""
    shared = _shared_flags()
    parser = argparse.ArgumentParser(
        prog="jacobi-approx",
        description="Jacobi expansions, Sobolev bases and simultaneous approximation",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(command: Command, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(
            str(command),
            parents=[shared],
            help=help_text,
            argument_default=argparse.SUPPRESS,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )

    p = add(Command.EVAL, "Evaluate P_n, J_n or the extended J_n at points.")
    p.add_argument("--n", type=int, help="Degree.")
    p.add_argument("--x", type=_float_list, help="Comma-separated points.")
    p.add_argument("--kind", choices=["P", "J", "Jext"], help="Polynomial family (default J).")

    p = add(Command.QUAD, "Print Gauss-Jacobi nodes and weights.")
    p.add_argument("--m", type=int, help="Number of nodes.")

    p = add(Command.EXPAND, "Print Fourier-Jacobi coefficients of a test function.")
    p.add_argument("--fn", help="Test-function id, e.g. exp, runge, endpoint:2.5.")
    p.add_argument("--n", type=int, help="Highest coefficient index.")

    p = add(Command.APPROX, "Derivative errors of one approximant.")
    p.add_argument("--fn", help="Test-function id.")
    p.add_argument("--op", choices=OPERATORS, help="Operator.")
    p.add_argument("--n", type=int, help="Degree parameter.")

    p = add(Command.RATES, "Convergence-rate study over a degree grid.")
    p.add_argument("--fn", help="Test-function id.")
    p.add_argument("--op", choices=OPERATORS, help="Operator.")
    p.add_argument("--ns", type=_int_list, help="Comma-separated degrees.")

    p = add(Command.SUBOPTIMAL, "Derivative errors of the plain partial sum.")
    p.add_argument("--fn", help="Test-function id.")
    p.add_argument("--r", type=int, help="Highest derivative order (default 1).")
    p.add_argument("--ns", type=_int_list, help="Comma-separated degrees.")

    p = add(Command.VERIFY, "Run invariant suites and print a pass/fail table.")
    p.add_argument(
        "selection",
        nargs="?",
        default="all",
        help=f"Suite group ({', '.join(GROUPS)}) or a single suite name.",
    )
    p.add_argument("--verbose", action="store_true", help="List every check.")

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """
    Parse and validate command line arguments.

    Argparse errors exit with status 2 on their own; invalid values raise.

    Raises:
        UsageError: With one aggregated message for every invalid value.
    """
    namespace = vars(build_parser().parse_args(argv))
    flags = {k: v for k, v in namespace.items() if k not in _LAYER_KEYS}
    return build_config(
        namespace["command"],
        flags,
        preset=namespace.get("preset"),
        config_path=namespace.get("config"),
    )


# =============================================================================
# Output helpers
# =============================================================================


def write_rows(header: Sequence[str], rows: Sequence[Sequence[Any]], out: Optional[Path]) -> None:
    """
    Write a CSV table to `out`, or stdout when out is None.

    Raises:
        ReportIOError: If the file cannot be written.
    """
    if out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    try:
        with out.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise ReportIOError("Could not write table", path=str(out), reason=str(e)) from e


def _check_rows(results: list[SuiteResult]) -> list[list[str]]:
    return [
        [r.name, c.name, fmt(c.value), fmt(c.threshold), str(c.passed), str(c.asserted)]
        for r in results
        for c in r.checks
    ]


# =============================================================================
# Commands
# =============================================================================


def cmd_eval(cfg: RunConfig) -> int:
    assert cfg.n is not None and cfg.x is not None
    xs = np.asarray(cfg.x, dtype=float)
    if cfg.kind == "P":
        values = jacobi_P(cfg.n, cfg.params, xs)
    elif cfg.kind == "Jext":
        values = jacobi_J_extended(cfg.n, cfg.params)(xs)
    else:
        values = jacobi_J(cfg.n, cfg.params, xs)
    write_rows(("x", "value"), [[fmt(x), fmt(v)] for x, v in zip(xs, values)], cfg.out)
    return EXIT_OK


def cmd_quad(cfg: RunConfig) -> int:
    assert cfg.m is not None
    rule = gauss_jacobi(cfg.m, cfg.params)
    rows = [[str(i), fmt(x), fmt(w)] for i, (x, w) in enumerate(zip(rule.nodes, rule.weights))]
    write_rows(("index", "node", "weight"), rows, cfg.out)
    return EXIT_OK


def cmd_expand(cfg: RunConfig) -> int:
    assert cfg.fn is not None and cfg.n is not None
    c = expand(registry(cfg.fn).fn, cfg.n, cfg.params)
    rows = [
        [str(k), fmt(coeff), fmt(h), fmt(tail)]
        for k, (coeff, h, tail) in enumerate(zip(c.coeffs, c.h, c.tail_energy))
    ]
    write_rows(("k", "coeff", "h_k", "tail_energy"), rows, cfg.out)
    return EXIT_OK


def cmd_approx(cfg: RunConfig) -> int:
    assert cfg.fn is not None and cfg.op is not None and cfg.n is not None
    order = get_settings().norm_quad_order
    sobolev = cfg.sobolev
    f = registry(cfg.fn).fn
    q = apply_operator(f, cfg.op, cfg.n, sobolev, order)
    errors = taylor_remainder_error(f, q, sobolev, cfg.pexp, order)
    get_logger(__name__).info("Approximant built", fn=cfg.fn, op=cfg.op, n=cfg.n, degree=q.degree)
    write_rows(("k", "error"), [[str(k), fmt(e)] for k, e in enumerate(errors)], cfg.out)
    return EXIT_OK


def cmd_rates(cfg: RunConfig) -> int:
    assert cfg.fn is not None and cfg.op is not None and cfg.ns is not None
    report = run_rates(cfg.fn, cfg.sobolev, cfg.op, cfg.ns, cfg.pexp)
    report.passed = judge_rates(report)
    emit_report(report, cfg.out, with_plot=cfg.plot_script)
    return EXIT_FAILED if report.passed is False else EXIT_OK


def cmd_suboptimal(cfg: RunConfig) -> int:
    assert cfg.fn is not None and cfg.ns is not None
    report = suboptimality_study(cfg.fn, cfg.params, cfg.r, cfg.ns)
    report.passed = judge_suboptimality(report)
    emit_report(report, cfg.out, with_plot=cfg.plot_script)
    return EXIT_FAILED if report.passed is False else EXIT_OK


def verify_all(cfg: RunConfig) -> int:
    """Run the selected suites; failures are reported in the table, never raised."""
    runner = build_runner(SuiteContext(seed=cfg.seed, literal_h=cfg.literal_h))
    try:
        runner.select(cfg.selection)
    except ValueError as e:
        raise UsageError(str(e)) from e
    results = asyncio.run(runner.run(cfg.selection))
    print(format_table(results, verbose=cfg.verbose))
    if cfg.out is not None:
        header = ("suite", "check", "value", "threshold", "passed", "asserted")
        write_rows(header, _check_rows(results), cfg.out)
    return EXIT_OK if all_passed(results) else EXIT_FAILED


COMMANDS = {
    Command.EVAL: cmd_eval,
    Command.QUAD: cmd_quad,
    Command.EXPAND: cmd_expand,
    Command.APPROX: cmd_approx,
    Command.RATES: cmd_rates,
    Command.SUBOPTIMAL: cmd_suboptimal,
    Command.VERIFY: verify_all,
}


# =============================================================================
# Entrypoint
# =============================================================================


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, configure logging and dispatch; returns the exit code."""
    try:
        cfg = parse_args(argv)
    except UsageError as e:
        print(f"jacobi-approx: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    # Override log level in settings if specified
    if cfg.log_level:
        os.environ["LOG_LEVEL"] = cfg.log_level
        get_settings.cache_clear()

    configure_logging()
    logger = get_logger(__name__, command=str(cfg.command))
    logger.debug("Configuration resolved", config=cfg.model_dump(mode="json"))

    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as e:
        print(f"jacobi-approx: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ApproximationError as e:
        logger.error("Command failed", error=str(e), details=e.details, exc_info=True)
        return EXIT_FAILED
    except ValueError as e:
        logger.error("Invalid value", error=str(e))
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> None:
    """
    Main entry point for the CLI.

    Exits with the code returned by run().
    """
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
