"""Ladder construction command implementation."""

from __future__ import annotations

import argparse
from pathlib import Path

from graph_path_integral.action import assemble_kernel
from graph_path_integral.chain_complex import (
    build_canonical_ladder,
    verify_boundary_of_boundary,
)
from graph_path_integral.cli.common import (
    add_links_arguments,
    add_scaling_arguments,
    add_settings_arguments,
    cross_check,
    emit,
    links_field,
    load_links,
    load_settings_from_args,
    scaling_fields,
)
from graph_path_integral.errors import ConsistencyError
from graph_path_integral.export import (
    dump_kernel,
    dump_operators,
    dump_spectrum,
    to_json,
)
from graph_path_integral.models.run_config import RunConfig
from graph_path_integral.spectral import decompose_kernel

__all__ = ["add_parser", "run"]


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    """Register the ``ladder`` subcommand with the CLI parser."""
    parser = subparsers.add_parser(
        "ladder", help="Build a canonical ladder and optionally dump its operators"
    )
    parser.add_argument("--N", type=int, required=True, help="Number of vertices")
    parser.add_argument(
        "--dump-operators",
        action="store_true",
        help="Write boundary1.csv, boundary2.csv and laplacian.csv",
    )
    parser.add_argument(
        "--dump-kernel", action="store_true", help="Write A.csv, J.csv and kernel.json"
    )
    parser.add_argument(
        "--dump-spectrum", action="store_true", help="Write eigenvalues.csv"
    )
    parser.add_argument(
        "--eigenvectors",
        action="store_true",
        help="With --dump-spectrum, also write eigenvectors.csv",
    )
    parser.add_argument(
        "--output-dir",
        type=Path,
        default=Path("."),
        help="Directory for dumped files (default: current directory)",
    )
    parser.add_argument(
        "--output", dest="output_path", type=Path, help="Summary file (default: stdout)"
    )
    add_links_arguments(parser)
    add_scaling_arguments(parser)
    add_settings_arguments(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    """Execute the ``ladder`` command."""
    config = RunConfig(
        command="ladder",
        N=args.N,
        links=links_field(args),
        output_path=args.output_path,
        dump_operators=args.dump_operators,
        **scaling_fields(args),
    )
    ladder = build_canonical_ladder(config.N)
    graph = ladder.base
    check = verify_boundary_of_boundary(graph)
    if not check.passed:
        raise ConsistencyError(f"∂₁∂₂ is not zero for N={config.N}")
    cross_check("edge count", graph.edge_count, 3 * config.N // 2 - 2)

    written: dict[str, str] = {}
    if config.dump_operators:
        files = dump_operators(graph, args.output_dir)
        written.update({name: str(path) for name, path in files.items()})
    if args.dump_kernel or args.dump_spectrum:
        kernel = assemble_kernel(
            graph, load_links(config, graph.edge_count), *config.scaling
        )
        if args.dump_kernel:
            files = dump_kernel(kernel, args.output_dir)
            written.update({name: str(path) for name, path in files.items()})
        if args.dump_spectrum:
            spectral = decompose_kernel(kernel, load_settings_from_args(args))
            files = dump_spectrum(spectral, args.output_dir, args.eigenvectors)
            written.update({name: str(path) for name, path in files.items()})

    summary = {
        "config": config.echo(),
        "vertex_count": graph.vertex_count,
        "edge_count": graph.edge_count,
        "plaquette_count": graph.plaquette_count,
        "edges": [list(edge) for edge in graph.edges],
        "plaquettes": [[list(i) for i in p] for p in graph.plaquettes],
        "edge_roles": [str(role) for role in ladder.edge_roles],
        "boundary_of_boundary": check.status,
        "files": written,
    }
    emit(to_json(summary), config.output_path)
    return 0
