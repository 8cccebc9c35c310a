# bispectral/cli/main.py
"""
bispectral command line.

    bispectral verify --example 1
    bispectral solve-theta --input fixtures/ex1.bsp --deg 3 --b-order 6 --z-low -6 --z-high 0 --compare C1
    bispectral solve-f --example 3 --deg 2 --l-order 2 --den "x^3*(x-2)^3" --num-deg 8 --compare F3
    bispectral ad-order --example 1 --max-m 10
    bispectral kdv --poles "-1:1,a:1,1-a:1" --modulus "a^2 - a + 1" --check
    bispectral format --input problem.bsp

Exit codes: 0 verified/solved, 1 verified-false or absent, 2 usage or parse error.
"""

from __future__ import annotations
from typing import List, Optional, Tuple
import argparse
import json
import logging
import sys

from bispectral.cli.commands import COMMANDS, UsageError
from bispectral.config import WorkbenchConfig
from bispectral.errors import BispectralError
from bispectral.fixtures import EXAMPLES
from bispectral.observability.logging import configure_logging
from bispectral.observability.metrics import metrics
from bispectral.schemas.report import Report, ReportStatus

logger = logging.getLogger(__name__)


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subparsers repeat the global flags with SUPPRESS so they may follow the subcommand
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--json", action="store_true", default=default(False), help="print the report as one JSON object")
    parser.add_argument("--quiet", action="store_true", default=default(False), help="status line only, warnings-only logging")
    parser.add_argument("--workers", type=int, default=default(None), help="assembly threads (1 = inline)")
    parser.add_argument("--log-level", default=default(None), help="logging level (default INFO)")


def _problem_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", metavar="FILE", help="problem file (.bsp)")
    parser.add_argument("--example", choices=sorted(EXAMPLES), help="built-in problem")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bispectral", description="Exact workbench for matrix bispectral problems")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check L Psi = p Psi (or Psi F) and Psi B = Theta Psi")
    _problem_source(p)

    p = sub.add_parser("solve-theta", parents=[common], help="all (Theta, B) pairs inside a finite ansatz")
    _problem_source(p)
    p.add_argument("--deg", type=int, help="degree bound N for Theta")
    p.add_argument("--b-order", type=int, required=True, help="maximal order M of B")
    p.add_argument("--z-low", type=int, required=True, help="lowest z exponent in B's coefficients")
    p.add_argument("--z-high", type=int, required=True, help="highest z exponent in B's coefficients")
    p.add_argument("--compare", choices=["C1", "C1-decoupled", "C2"], help="compare with a conjectured family")
    p.add_argument("--escalate", action="store_true", help="double the bounds until B is found (or the spans agree)")
    p.add_argument("--theta", metavar="NAME", help="solve B for this bound Theta only")

    p = sub.add_parser("solve-f", parents=[common], help="all (F, L) pairs inside a finite ansatz")
    _problem_source(p)
    p.add_argument("--deg", type=int, required=True, help="degree bound N for F")
    p.add_argument("--l-order", type=int, required=True, help="maximal order of L")
    p.add_argument("--den", default="1", help="fixed denominator d(x) of L's coefficients")
    p.add_argument("--num-deg", type=int, required=True, help="degree bound D of the numerators")
    p.add_argument("--compare", choices=["F3"], help="compare with a conjectured family")

    p = sub.add_parser("ad-order", parents=[common], help="least m with (ad L)^(m+1) T = 0")
    _problem_source(p)
    p.add_argument("--max-m", type=int, required=True)

    p = sub.add_parser("kdv", parents=[common], help="scalar rational KdV potentials")
    p.add_argument("--poles", required=True, help="'p:nu,...' with p a scalar expression")
    p.add_argument("--modulus", help="place poles in Q[a]/(modulus)")
    p.add_argument("--generator", default="a", help="name of the extension generator")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", action="store_true", help="evaluate the pole constraints")
    mode.add_argument("--tau", action="store_true", help="tau polynomial and potential")
    mode.add_argument("--dim", type=int, metavar="N", help="admissible polynomials of degree <= N")
    mode.add_argument("--crosscheck", type=int, metavar="N", help="compare with the matrix solver")

    p = sub.add_parser("format", parents=[common], help="print the canonical form of a problem")
    _problem_source(p)
    return parser


def _config(args: argparse.Namespace) -> WorkbenchConfig:
    config = WorkbenchConfig()
    if args.workers is not None:
        config.thread_workers = args.workers
    if args.log_level:
        config.log_level = args.log_level.upper()
    if args.quiet:
        config.log_level = "WARNING"
    return config


def run(argv: List[str]) -> Tuple[argparse.Namespace, Report]:
    """Parse argv, execute the subcommand and return its report; argparse exits on usage errors."""
    args = build_parser().parse_args(argv)
    config = _config(args)
    configure_logging(level=config.log_level, log_to_file=config.log_to_file, json_logs=config.json_logs)
    echo = " ".join(argv)
    with metrics.timer(f"cli.{args.command}") as t:
        try:
            report = COMMANDS[args.command](args, config)
        except (BispectralError, UsageError, KeyError) as exc:
            message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
            logger.error("Command failed: %s", message, extra={"command": args.command})
            report = Report(command=echo, status=ReportStatus.ERROR, error=str(message))
    report.command = echo
    report.ms = t.elapsed_ms
    logger.info(
        "Command finished: %s",
        report.status.value,
        extra={"command": args.command, "status": report.status.value, "dims": report.dims, "elapsed_ms": t.elapsed_ms},
    )
    return args, report


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, report = run(argv)
    except SystemExit as exc:
        # argparse usage errors
        return int(exc.code or 0)
    if args.json:
        print(json.dumps(report.to_payload(), ensure_ascii=False))
    elif args.command == "format" and report.status == ReportStatus.SOLVED:
        sys.stdout.write(report.values["text"])
    else:
        print(report.to_text(quiet=args.quiet))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
