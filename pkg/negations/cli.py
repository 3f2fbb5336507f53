from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from dataclasses import asdict
from pathlib import Path
from typing import NoReturn

from negations.analysis import classify, fixed_point
from negations.dynamics import (
    converge,
    iterate,
    point_orbit,
    point_orbit_to_csv,
    trace_to_csv,
)
from negations.errors import DomainError, InputError
from negations.negators import format_negator, negate, parse_negator
from negations.properties import PROPERTY_NAMES, run_properties
from negations.settings import (
    DEFAULT_ITERATION,
    ClassificationSettings,
    PropertySettings,
    configure_logging,
    stderr_console,
)
from negations.simplex_core import (
    entropy,
    linf_to_uniform,
    max_entropy,
    parse_dist,
    stats,
)
from negations.tables import property_table, report_table

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DOMAIN = 2
EXIT_PROPERTY_FAILED = 3


class ArgumentParser(argparse.ArgumentParser):
    """Reports malformed flags with exit code 1 instead of argparse's 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dumps(payload: object) -> str:
    return json.dumps(payload, separators=(",", ":")) + "\n"


def _report(exc: Exception) -> None:
    stderr_console.print(f"error: {exc}", style="red", markup=False, highlight=False)


def cmd_negate(options: argparse.Namespace) -> str:
    spec = parse_negator(options.negator)
    return _dumps(negate(spec, parse_dist(options.dist)).to_list())


def cmd_iterate(options: argparse.Namespace) -> str:
    spec = parse_negator(options.negator)
    trace = iterate(spec, parse_dist(options.dist), options.steps)
    if options.format == "csv":
        return trace_to_csv(trace)
    return _dumps({"negator": format_negator(spec), **trace.to_dict()})


def cmd_converge(options: argparse.Namespace) -> str:
    spec = parse_negator(options.negator)
    outcome = converge(
        spec,
        parse_dist(options.dist),
        eps=options.eps,
        max_iter=options.max_iter,
        full_history=options.full_history,
    )
    return _dumps({"negator": format_negator(spec), **outcome.to_dict()})


def cmd_classify(options: argparse.Namespace) -> str:
    spec = parse_negator(options.negator)
    report = classify(spec, options.n, options.samples, options.seed)
    if options.table:
        stderr_console.print(report_table(report))
    return _dumps(report.to_dict())


def cmd_entropy(options: argparse.Namespace) -> str:
    P = parse_dist(options.dist)
    return _dumps(
        {
            "entropy": entropy(P),
            "max_entropy": max_entropy(P.n),
            "linf": linf_to_uniform(P),
            "stats": stats(P).to_dict(),
        }
    )


def cmd_fixed_point(options: argparse.Namespace) -> str:
    spec = parse_negator(options.negator)
    context = parse_dist(options.dist) if options.dist else None
    n = options.n
    if n is None:
        if context is None:
            raise InputError("fixed-point needs --n or --dist")
        n = context.n
    # fixed_point rejects an --n that disagrees with the --dist length
    root = fixed_point(spec, n, context)
    return _dumps({"negator": format_negator(spec), "n": n, "fixed_point": root})


def cmd_point_orbit(options: argparse.Namespace) -> str:
    spec = parse_negator(options.negator)
    values = point_orbit(spec, options.p, options.n, options.steps)
    if options.format == "csv":
        return point_orbit_to_csv(values)
    payload = {"negator": format_negator(spec), "n": options.n, "values": list(values)}
    return _dumps(payload)


def cmd_verify(options: argparse.Namespace) -> str:
    settings = PropertySettings(
        seed=options.seed, samples=options.samples, max_n=options.max_n
    )
    results = run_properties(
        options.only or None,
        settings,
        workers=options.workers,
        progress=not options.quiet,
    )
    payload = _dumps(
        {
            "settings": asdict(settings),
            "results": [result.to_dict() for result in results],
        }
    )
    if options.output:
        options.output.parent.mkdir(parents=True, exist_ok=True)
        options.output.write_text(payload)
    if not options.quiet:
        stderr_console.print(property_table(results))

    if not all(result.passed for result in results):
        options.exit_code = EXIT_PROPERTY_FAILED
    return payload


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="negations",
        description="Negations of finite probability distributions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, handler, help: str) -> ArgumentParser:
        command = commands.add_parser(name, help=help)
        command.set_defaults(handler=handler)
        return command

    negator_help = "yager, uniform, involutive, linear:alpha=<x> or tsallis:k=<x>"
    dist_help = "comma-separated probabilities, a JSON array, or @file.json"

    negate_command = add_command("negate", cmd_negate, "negate a distribution once")
    negate_command.add_argument("--negator", required=True, help=negator_help)
    negate_command.add_argument("--dist", required=True, help=dist_help)

    iterate_command = add_command("iterate", cmd_iterate, "trace repeated negations")
    iterate_command.add_argument("--negator", required=True, help=negator_help)
    iterate_command.add_argument("--dist", required=True, help=dist_help)
    iterate_command.add_argument("-k", "--steps", type=int, default=10)
    iterate_command.add_argument("--format", choices=["json", "csv"], default="json")

    converge_command = add_command(
        "converge", cmd_converge, "iterate until the uniform distribution or a cycle"
    )
    converge_command.add_argument("--negator", required=True, help=negator_help)
    converge_command.add_argument("--dist", required=True, help=dist_help)
    converge_command.add_argument("--eps", type=float, default=DEFAULT_ITERATION.eps)
    converge_command.add_argument(
        "--max-iter", type=int, default=DEFAULT_ITERATION.max_iter
    )
    converge_command.add_argument(
        "--full-history",
        action="store_true",
        help="Detect cycles against every previous step, not only the first two.",
    )

    classify_command = add_command(
        "classify", cmd_classify, "contracting / expanding / involutive verdict"
    )
    classify_command.add_argument("--negator", required=True, help=negator_help)
    classify_command.add_argument("--n", type=int, required=True)
    classify_command.add_argument(
        "--samples", type=int, default=ClassificationSettings.samples
    )
    classify_command.add_argument("--seed", type=int, required=True)
    classify_command.add_argument(
        "--table", action="store_true", help="Also print the witnesses on stderr."
    )

    entropy_command = add_command("entropy", cmd_entropy, "entropy and statistics")
    entropy_command.add_argument("--dist", required=True, help=dist_help)

    fixed_point_command = add_command(
        "fixed-point", cmd_fixed_point, "locate the fixed point of a negator"
    )
    fixed_point_command.add_argument("--negator", required=True, help=negator_help)
    fixed_point_command.add_argument("--n", type=int)
    fixed_point_command.add_argument(
        "--dist", help="context distribution for pd-dependent negators"
    )

    orbit_command = add_command(
        "point-orbit", cmd_point_orbit, "N^k(p) for a pd-independent negator"
    )
    orbit_command.add_argument("--negator", required=True, help=negator_help)
    orbit_command.add_argument("--p", type=float, required=True)
    orbit_command.add_argument("--n", type=int, required=True)
    orbit_command.add_argument("-k", "--steps", type=int, default=10)
    orbit_command.add_argument("--format", choices=["json", "csv"], default="csv")

    verify_command = add_command("verify", cmd_verify, "run the property checks")
    verify_command.add_argument("--only", nargs="*", choices=PROPERTY_NAMES)
    verify_command.add_argument("--samples", type=int, default=PropertySettings.samples)
    verify_command.add_argument("--seed", type=int, default=PropertySettings.seed)
    verify_command.add_argument("--max-n", type=int, default=PropertySettings.max_n)
    verify_command.add_argument("--workers", type=int, default=4)
    verify_command.add_argument("--output", type=Path)
    verify_command.add_argument("--quiet", action="store_true")

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT

    configure_logging(options.verbose)
    try:
        payload = options.handler(options)
    except InputError as exc:
        _report(exc)
        return EXIT_INPUT
    except DomainError as exc:
        _report(exc)
        return EXIT_DOMAIN

    sys.stdout.write(payload)
    return getattr(options, "exit_code", EXIT_OK)


def main() -> None:
    sys.exit(run(sys.argv[1:]))
