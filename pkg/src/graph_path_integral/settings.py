"""
Module for numerical settings of the path integral pipeline.
"""

import json
from os import PathLike
from pathlib import Path
from typing import Literal, overload

from pydantic import Field, PositiveFloat, PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict

EigenSolver = Literal["auto", "jacobi", "lapack"]


class NumericsSettings(BaseSettings):
    """Tolerances and solver choices used across the pipeline.

    Attributes:
        eigensolver: Dense symmetric eigensolver. ``auto`` uses Jacobi rotations up
            to ``jacobi_max_dimension`` and LAPACK above it.
        jacobi_max_dimension: Largest matrix handed to the Jacobi solver in ``auto`` mode.
        jacobi_max_sweeps: Sweep cap of the Jacobi solver.
        zero_tolerance_relative: Null-mode threshold relative to the largest eigenvalue.
        row_space_tolerance: Largest accepted null projection of the source, relative
            to its norm.
        fresnel_epsilons: Decreasing regulator schedule of the Fresnel quadrature.
        fresnel_tolerance: Relative tolerance of the Fresnel oracle.
        max_workers: Thread count for sweeps. ``None`` runs rows serially.

    """

    eigensolver: EigenSolver = Field(default="auto", alias="GPI_EIGENSOLVER")
    jacobi_max_dimension: PositiveInt = Field(
        default=192, alias="GPI_JACOBI_MAX_DIMENSION"
    )
    jacobi_max_sweeps: PositiveInt = Field(default=60, alias="GPI_JACOBI_MAX_SWEEPS")

    # tolerances
    zero_tolerance_relative: PositiveFloat = Field(
        default=1e-9, alias="GPI_ZERO_TOLERANCE_RELATIVE"
    )
    row_space_tolerance: PositiveFloat = Field(
        default=1e-10, alias="GPI_ROW_SPACE_TOLERANCE"
    )

    # fresnel oracle
    fresnel_epsilons: tuple[PositiveFloat, ...] = Field(
        default=(0.02, 0.01, 0.005, 0.0025), alias="GPI_FRESNEL_EPSILONS"
    )
    fresnel_tolerance: PositiveFloat = Field(default=1e-3, alias="GPI_FRESNEL_TOLERANCE")

    max_workers: PositiveInt | None = Field(default=None, alias="GPI_MAX_WORKERS")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        populate_by_name=True,
        frozen=True,
    )


@overload
def get_settings(
    *, source: Literal["env"] = "env", env_file: str | Path | None = None
) -> NumericsSettings: ...


@overload
def get_settings(
    *, source: Literal["json"] = "json", file: str | Path
) -> NumericsSettings: ...


def get_settings(
    *,
    source: Literal["env", "json"] = "env",
    env_file: PathLike | Path | None = None,
    file: str | Path | None = None,
) -> NumericsSettings:
    """Return an instance of NumericsSettings.

    Args:
        source (str): Source of the settings. Can be "env" or "json".
        env_file (str | Path, optional): Path to the .env file. Defaults to None.
            Only used if source is "env".
        file (str | Path, optional): Path to the JSON file. Defaults to None.
            Only used if source is "json".

    """
    if source == "env":
        config_kwargs = {"_env_file": env_file} if env_file else {}
        return NumericsSettings(**config_kwargs)

    if source == "json":
        if file is None:
            raise ValueError("File path must be provided when source is 'json'.")
        raw = json.loads(Path(file).read_text())
        return NumericsSettings.model_validate(raw)

    raise ValueError("Invalid source. Must be 'env' or 'json'.")
