"""Command line interface for the ``graph_path_integral`` package."""

from graph_path_integral.cli.main import main

__all__ = ["main"]
