import argparse
import math
import sys
from pathlib import Path

import numpy as np

from graph_path_integral.errors import ConsistencyError
from graph_path_integral.export import parse_links, read_links
from graph_path_integral.logger import logger
from graph_path_integral.models.kernel import LinkValues
from graph_path_integral.models.run_config import RunConfig
from graph_path_integral.settings import NumericsSettings, get_settings


def load_settings_from_args(args: argparse.Namespace) -> NumericsSettings:
    if args.settings_file:
        return get_settings(source="json", file=args.settings_file)
    return get_settings(env_file=args.env_file)


def add_settings_arguments(parser: argparse.ArgumentParser) -> None:
    """Register ``--settings-file`` and ``--env-file``."""
    parser.add_argument(
        "--settings-file", type=Path, help="JSON file with numerical settings"
    )
    parser.add_argument(
        "--env-file", type=Path, help="Path to a .env file with numerical settings"
    )


def add_scaling_arguments(parser: argparse.ArgumentParser) -> None:
    """Register both scaling groups; :class:`RunConfig` decides which one is allowed."""
    raw = parser.add_argument_group("scaling (alpha, beta, hbar)")
    raw.add_argument("--alpha", type=float, help="Source scaling (default: 1)")
    raw.add_argument("--beta", type=float, help="Kernel scaling (default: 1)")
    raw.add_argument("--hbar", type=float, help="Action scale (default: 1)")
    wave = parser.add_argument_group("scaling (lambda, h)")
    wave.add_argument(
        "--lambda", dest="lambda_", type=float, help="Relational length unit (default: 1)"
    )
    wave.add_argument("--h", type=float, help="Action unit (default: 1)")


def add_output_arguments(
    parser: argparse.ArgumentParser, default_format: str = "json"
) -> None:
    """Register ``--format`` and ``--output``."""
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=["csv", "json"],
        default=default_format,
        help="Output format (default: %(default)s)",
    )
    parser.add_argument(
        "--output", dest="output_path", type=Path, help="Output file (default: stdout)"
    )


def add_links_arguments(parser: argparse.ArgumentParser) -> None:
    """Register ``--links`` (inline) and ``--links-file``."""
    links = parser.add_mutually_exclusive_group()
    links.add_argument(
        "--links", metavar="E1,E2,...", help="Comma separated link values in edge order"
    )
    links.add_argument(
        "--links-file", type=Path, help="CSV or JSON file with link values in edge order"
    )


def scaling_fields(args: argparse.Namespace) -> dict:
    """Scaling values given on the command line, by ``RunConfig`` field name."""
    fields = {}
    for name in ("alpha", "beta", "hbar", "lambda_", "h"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    return fields


def links_field(args: argparse.Namespace) -> tuple[float, ...] | Path | None:
    if getattr(args, "links_file", None) is not None:
        return args.links_file
    if getattr(args, "links", None) is not None:
        return tuple(parse_links(args.links).values.tolist())
    return None


def load_links(config: RunConfig, edge_count: int) -> LinkValues:
    """Link values of a run, all zero when none were supplied.

    Raises:
        DimensionMismatchError: If the count differs from ``edge_count``.
    """
    if config.links is None:
        return LinkValues(values=np.zeros(edge_count))
    if isinstance(config.links, Path):
        return read_links(config.links, edge_count)
    return parse_links(",".join(repr(v) for v in config.links), edge_count)


def resolve_seed(seed: int | None) -> int:
    """Return ``seed``, or draw and log a fresh one."""
    if seed is None:
        seed = int(np.random.default_rng().integers(0, 2**31 - 1))
        logger.info(f"No seed given; using seed {seed}")
    return seed


def parse_sweep(value: str) -> list[float]:
    """Parse ``start:stop:step`` (stop included) or a comma separated list."""
    if ":" not in value:
        return [float(item) for item in value.split(",") if item.strip()]
    try:
        start, stop, step = (float(part) for part in value.split(":"))
    except ValueError as error:
        raise ValueError(f"Invalid sweep {value!r}, expected start:stop:step") from error
    if step <= 0 or stop < start:
        raise ValueError(f"Invalid sweep {value!r}: need step > 0 and stop >= start")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return np.linspace(start, start + (count - 1) * step, count).tolist()


def parse_sizes(value: str) -> tuple[int, ...]:
    return tuple(int(item) for item in value.split(",") if item.strip())


def emit(text: str, output_path: Path | None) -> None:
    """Write ``text`` to ``output_path``, or to standard output."""
    if output_path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(text)
    logger.info(f"Wrote {output_path}")


def cross_check(name: str, reported: float, recomputed: float) -> None:
    """Require a reported value to equal its independent recomputation.

    Raises:
        ConsistencyError: If the values differ.
    """
    if reported != recomputed:
        raise ConsistencyError(
            f"{name}: reported {reported!r} but recomputed {recomputed!r}"
        )
