"""Entry point for the ``graph_path_integral`` command line interface."""

import argparse
from typing import Iterable

from graph_path_integral.cli import amplitude, ladder, sweep, twinslit, verify
from graph_path_integral.errors import ConsistencyError, ConvergenceError
from graph_path_integral.logger import logger, set_level

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    """Create the CLI argument parser and register commands."""
    parser = argparse.ArgumentParser(
        description="Discrete path integrals over oriented ladder graphs"
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="Log level for this run (default: LOG_LEVEL or INFO)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    ladder.add_parser(subparsers)
    verify.add_parser(subparsers)
    amplitude.add_parser(subparsers)
    twinslit.add_parser(subparsers)
    sweep.add_parser(subparsers)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    """Parse ``argv`` and execute the selected command.

    Returns:
        0 on success, 1 when a check or internal cross-check fails, 2 on invalid input.
    """
    parser = _build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)

    if not hasattr(args, "func"):
        parser.error(f"Unknown command: {args.command}")
        return 2

    if args.log_level:
        set_level(args.log_level)

    try:
        return args.func(args)
    except ConsistencyError as error:
        logger.error(f"Consistency check failed: {error}")
        return 1
    except ConvergenceError as error:
        logger.error(f"Eigensolver failed: {error}")
        return 1
    except ValueError as error:
        logger.error(f"Invalid input: {error}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
