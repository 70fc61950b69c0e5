"""Reading and writing operators, kernels, spectra, graphs, links and patterns."""

from __future__ import annotations

import json
from os import PathLike
from pathlib import Path
from typing import Any, Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel

from graph_path_integral.chain_complex import boundary1, boundary2, laplacian
from graph_path_integral.errors import DimensionMismatchError
from graph_path_integral.logger import logger
from graph_path_integral.models.graph import BoundaryOperator, OrientedGraph
from graph_path_integral.models.kernel import ActionKernel, LinkValues
from graph_path_integral.models.spectral import SpectralData

OutputFormat = Literal["csv", "json"]


def write_matrix_csv(matrix: BoundaryOperator | np.ndarray, path: str | PathLike) -> Path:
    """Write a matrix as row-major CSV without header or index."""
    entries = matrix.entries if isinstance(matrix, BoundaryOperator) else matrix
    output_path = Path(path)
    pd.DataFrame(np.atleast_2d(entries)).to_csv(output_path, header=False, index=False)
    return output_path


def read_matrix_csv(path: str | PathLike, dtype: type = np.int64) -> np.ndarray:
    """Read a headerless CSV matrix."""
    return pd.read_csv(Path(path), header=None).to_numpy(dtype=dtype)


def dump_operators(graph: OrientedGraph, directory: str | PathLike) -> dict[str, Path]:
    """Write ∂₁, ∂₂ and the Laplacian of ``graph`` as integer CSV files."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = {
        "boundary1": write_matrix_csv(boundary1(graph), directory / "boundary1.csv"),
        "laplacian": write_matrix_csv(laplacian(graph), directory / "laplacian.csv"),
    }
    if graph.plaquette_count:
        written["boundary2"] = write_matrix_csv(
            boundary2(graph), directory / "boundary2.csv"
        )
    logger.info(f"Wrote {len(written)} operator files to {directory}")
    return written


def dump_kernel(kernel: ActionKernel, directory: str | PathLike) -> dict[str, Path]:
    """Write ``A.csv``, ``J.csv`` and the ``kernel.json`` sidecar."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    a_path, j_path = directory / "A.csv", directory / "J.csv"
    pd.DataFrame(kernel.A).to_csv(a_path, header=False, index=False)
    pd.DataFrame({"J": kernel.J}).to_csv(j_path, header=False, index=False)
    sidecar = directory / "kernel.json"
    sidecar.write_text(
        json.dumps(
            {
                "alpha": kernel.alpha,
                "beta": kernel.beta,
                "hbar": kernel.hbar,
                "N": kernel.vertex_count,
                "edge_count": kernel.edge_count,
            },
            indent=4,
        )
    )
    return {"A": a_path, "J": j_path, "kernel": sidecar}


def dump_spectrum(
    spectral: SpectralData,
    directory: str | PathLike,
    include_eigenvectors: bool = False,
) -> dict[str, Path]:
    """Write ``eigenvalues.csv`` and, optionally, ``eigenvectors.csv`` (one column per mode)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    values_path = directory / "eigenvalues.csv"
    pd.DataFrame({"eigenvalue": spectral.eigenvalues}).to_csv(values_path, index=False)
    written = {"eigenvalues": values_path}
    if include_eigenvectors:
        vectors_path = directory / "eigenvectors.csv"
        columns = [f"mode_{i}" for i in range(spectral.dimension)]
        pd.DataFrame(spectral.eigenvectors, columns=columns).to_csv(
            vectors_path, index=False
        )
        written["eigenvectors"] = vectors_path
    return written


def graph_to_json(graph: OrientedGraph) -> str:
    """Serialise a graph: vertex count, ``[tail, head]`` edges, ``[[edge, sign], …]`` plaquettes."""
    return graph.model_dump_json(indent=4)


def graph_from_json(data: str | bytes) -> OrientedGraph:
    """Parse and validate a graph written by :func:`graph_to_json`."""
    return OrientedGraph.model_validate_json(data)


def read_links(path: str | PathLike, edge_count: int | None = None) -> LinkValues:
    """Read link values from a JSON list or a headerless CSV (one value per cell).

    Raises:
        DimensionMismatchError: If ``edge_count`` is given and does not match.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        values = np.asarray(json.loads(path.read_text()), dtype=np.float64).ravel()
    else:
        values = pd.read_csv(path, header=None).to_numpy(dtype=np.float64).ravel()
    return _checked_links(values, edge_count)


def parse_links(text: str, edge_count: int | None = None) -> LinkValues:
    """Parse comma separated link values, e.g. ``"1,1,0.5,2"``."""
    try:
        values = np.array([float(item) for item in text.split(",") if item.strip()])
    except ValueError as error:
        raise ValueError(f"Invalid link list {text!r}: {error}") from error
    return _checked_links(values, edge_count)


def _checked_links(values: np.ndarray, edge_count: int | None) -> LinkValues:
    if edge_count is not None and values.size != edge_count:
        raise DimensionMismatchError(
            f"Got {values.size} link values, the graph has {edge_count} edges"
        )
    return LinkValues(values=values)


def to_json(payload: BaseModel | dict[str, Any]) -> str:
    """Deterministic indented JSON for a model or a plain mapping."""
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=4, by_alias=True)
    return json.dumps(payload, indent=4, default=_json_default)


def _json_default(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json", by_alias=True)
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serialisable")


def table_to_text(
    table: pd.DataFrame,
    output_format: OutputFormat = "csv",
    config: dict[str, Any] | None = None,
) -> str:
    """Render a table as CSV with header, or as JSON rows with a config echo."""
    if output_format == "csv":
        return table.to_csv(index=False)
    records = table.to_dict(orient="records")
    return to_json({"config": config or {}, "rows": records}) + "\n"


def write_table(
    table: pd.DataFrame,
    path: str | PathLike,
    output_format: OutputFormat = "csv",
    config: dict[str, Any] | None = None,
) -> Path:
    """Write a table (pattern or sweep) in the requested format."""
    output_path = Path(path)
    output_path.write_text(table_to_text(table, output_format, config))
    logger.info(f"Wrote {len(table)} rows to {output_path}")
    return output_path
