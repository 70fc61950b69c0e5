"""Amplitude command implementation."""

from __future__ import annotations

import argparse

import pandas as pd

from graph_path_integral.action import assemble_kernel
from graph_path_integral.amplitude import amplitude_report, phase_numeric
from graph_path_integral.chain_complex import build_canonical_ladder
from graph_path_integral.cli.common import (
    add_links_arguments,
    add_output_arguments,
    add_scaling_arguments,
    add_settings_arguments,
    cross_check,
    emit,
    links_field,
    load_links,
    load_settings_from_args,
    scaling_fields,
)
from graph_path_integral.models.run_config import RunConfig
from graph_path_integral.spectral import decompose_kernel

__all__ = ["add_parser", "run"]


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    """Register the ``amplitude`` subcommand with the CLI parser."""
    parser = subparsers.add_parser(
        "amplitude", help="Symmetry amplitude and phase of a ladder with given links"
    )
    parser.add_argument("--N", type=int, required=True, help="Ladder size")
    add_links_arguments(parser)
    add_scaling_arguments(parser)
    add_output_arguments(parser)
    add_settings_arguments(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    """Execute the ``amplitude`` command."""
    config = RunConfig(
        command="amplitude",
        N=args.N,
        links=links_field(args),
        output_format=args.output_format,
        output_path=args.output_path,
        **scaling_fields(args),
    )
    settings = load_settings_from_args(args)
    ladder = build_canonical_ladder(config.N)
    links = load_links(config, ladder.base.edge_count)
    kernel = assemble_kernel(ladder.base, links, *config.scaling)
    spectral = decompose_kernel(kernel, settings)
    report = amplitude_report(
        kernel,
        spectral,
        ladder,
        config=config.echo(),
        row_space_tolerance=settings.row_space_tolerance,
    )
    cross_check(
        "phase_total",
        report.phase_total,
        phase_numeric(kernel, spectral, settings.row_space_tolerance),
    )

    if config.output_format == "json":
        emit(report.model_dump_json(indent=4), config.output_path)
    else:
        row = report.model_dump(exclude={"resolved_sum_limits", "residuals", "config"})
        row.update({f"residual_{k}": v for k, v in report.residuals.items()})
        emit(pd.DataFrame([row]).to_csv(index=False), config.output_path)
    return 0
