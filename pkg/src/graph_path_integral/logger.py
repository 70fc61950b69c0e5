"""
Package logger for solver, verification and sweep progress.

Records go to stderr so that JSON and CSV reports written to stdout stay
machine readable. The level starts at ``LOG_LEVEL`` (default ``INFO``) and the
command line can raise or lower it with ``--log-level``.
"""

import logging
import os
from typing import Final

LOGGER_NAME: Final[str] = "graph-path-integral"

_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

logger = logging.getLogger(LOGGER_NAME)
logger.setLevel(os.getenv("LOG_LEVEL", "INFO").upper())
logger.propagate = False

if not logger.handlers:
    _handler = logging.StreamHandler()
    _handler.setFormatter(logging.Formatter(_FORMAT, datefmt=_DATE_FORMAT))
    logger.addHandler(_handler)


def get_logger(name: str | None = None) -> logging.Logger:
    """The package logger, or a named child that shares its handler and level."""
    return logger if name is None else logger.getChild(name)


def set_level(level: str | int) -> None:
    """Set the package log level; names are case insensitive."""
    logger.setLevel(level.upper() if isinstance(level, str) else level)
