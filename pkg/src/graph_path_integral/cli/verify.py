"""Invariant battery command implementation."""

from __future__ import annotations

import argparse
from pathlib import Path

from graph_path_integral.chain_complex import (
    build_canonical_ladder,
    verify_boundary_of_boundary,
)
from graph_path_integral.cli.common import (
    add_settings_arguments,
    cross_check,
    emit,
    load_settings_from_args,
    resolve_seed,
)
from graph_path_integral.export import to_json
from graph_path_integral.models.run_config import RunConfig
from graph_path_integral.verification import run_verification

__all__ = ["add_parser", "run"]


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    """Register the ``verify`` subcommand with the CLI parser."""
    parser = subparsers.add_parser(
        "verify", help="Run the invariant checks and write a JSON report"
    )
    parser.add_argument("--N", type=int, required=True, help="Ladder size")
    parser.add_argument("--seed", type=int, help="Seed of the randomised checks")
    parser.add_argument(
        "--trials",
        type=int,
        default=100,
        help="Random instances per randomised check (default: %(default)s)",
    )
    parser.add_argument(
        "--output", dest="output_path", type=Path, help="Report file (default: stdout)"
    )
    add_settings_arguments(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    """Execute the ``verify`` command.

    Returns 0 when every check passes and 1 otherwise.
    """
    config = RunConfig(
        command="verify",
        N=args.N,
        seed=resolve_seed(args.seed),
        trials=args.trials,
        output_path=args.output_path,
    )
    report = run_verification(
        config.N, config.seed, config.trials, load_settings_from_args(args)
    )
    recomputed = verify_boundary_of_boundary(build_canonical_ladder(config.N).base)
    cross_check(
        "boundary_of_boundary",
        report.summary["boundary_of_boundary"] == "pass",
        recomputed.passed,
    )

    payload = {"config": config.echo(), **report.model_dump(mode="json")}
    emit(to_json(payload), config.output_path)
    return 0 if report.passed else 1
