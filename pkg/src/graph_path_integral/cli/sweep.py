"""Numeric against closed-form phase sweep command implementation."""

from __future__ import annotations

import argparse

from graph_path_integral.amplitude import RESOLVED_SUM_LIMITS
from graph_path_integral.cli.common import (
    add_output_arguments,
    add_scaling_arguments,
    add_settings_arguments,
    emit,
    load_settings_from_args,
    parse_sizes,
    resolve_seed,
    scaling_fields,
)
from graph_path_integral.export import table_to_text
from graph_path_integral.logger import logger
from graph_path_integral.models.run_config import RunConfig
from graph_path_integral.verification import EQUIVALENCE_SIZES, equivalence_sweep

__all__ = ["add_parser", "run"]

_TOLERANCE = 1e-9


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    """Register the ``sweep`` subcommand with the CLI parser."""
    parser = subparsers.add_parser(
        "sweep",
        help="Compare the numeric and closed-form ladder phase over random links",
    )
    parser.add_argument(
        "--sizes",
        type=parse_sizes,
        default=EQUIVALENCE_SIZES,
        metavar="N1,N2,...",
        help="Ladder sizes (default: 4,6,8,12,20)",
    )
    parser.add_argument(
        "--trials",
        type=int,
        default=100,
        help="Random link vectors per size (default: %(default)s)",
    )
    parser.add_argument("--seed", type=int, help="Seed of the link vectors")
    add_scaling_arguments(parser)
    add_output_arguments(parser, default_format="csv")
    add_settings_arguments(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    """Execute the ``sweep`` command.

    Returns 1 when any relative residual exceeds 1e-9.
    """
    config = RunConfig(
        command="sweep",
        sizes=tuple(args.sizes),
        trials=args.trials,
        seed=resolve_seed(args.seed),
        output_format=args.output_format,
        output_path=args.output_path,
        **scaling_fields(args),
    )
    table = equivalence_sweep(
        config.sizes,
        config.trials,
        config.seed,
        *config.scaling,
        settings=load_settings_from_args(args),
    )
    worst = float(table["relative_residual"].max())
    logger.info(f"Largest relative residual over {len(table)} rows: {worst:.3e}")
    echo = {"run": config.echo(), "resolved_sum_limits": RESOLVED_SUM_LIMITS}
    emit(table_to_text(table, config.output_format, echo), config.output_path)
    return 0 if worst <= _TOLERANCE else 1
