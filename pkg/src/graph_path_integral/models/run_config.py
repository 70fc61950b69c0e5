from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

from pydantic import (
    ConfigDict,
    Field,
    FiniteFloat,
    PositiveFloat,
    PositiveInt,
    model_validator,
)

from graph_path_integral.models.common import FrozenModel

Command = Literal["ladder", "verify", "amplitude", "twinslit", "sweep"]

_NEEDS_SIZE = {"ladder", "verify", "amplitude", "twinslit"}


class RunConfig(FrozenModel):
    """Validated arguments of one command-line run.

    Two scaling groups exist: ``alpha``/``beta``/``hbar`` for the graph commands and
    ``lambda``/``h`` for ``twinslit``, where α, β and ħ are derived. A run supplies
    at most one of them; missing values default to 1.

    Attributes:
        command: Sub-command being run.
        N: Ladder size, required by every command except ``sweep``.
        sizes: Ladder sizes of a ``sweep``.
        links: Inline link values, or the file they are read from.
        alpha: Source scaling.
        beta: Kernel scaling.
        hbar: Action scale.
        lambda_: Relational length unit (``lambda`` when serialised).
        h: Action unit.
        output_format: ``csv`` or ``json``.
        output_path: Output file; standard output when omitted.
        dump_operators: Whether operator matrices are written.
        seed: Seed of randomised runs.
        trials: Random instances per randomised check.
    """

    command: Command
    N: int | None = None
    sizes: tuple[int, ...] | None = None
    links: tuple[FiniteFloat, ...] | Path | None = None
    alpha: FiniteFloat | None = None
    beta: FiniteFloat | None = None
    hbar: FiniteFloat | None = None
    lambda_: PositiveFloat | None = Field(default=None, alias="lambda")
    h: PositiveFloat | None = None
    output_format: Literal["csv", "json"] = "json"
    output_path: Path | None = None
    dump_operators: bool = False
    seed: int | None = None
    trials: PositiveInt = 100

    model_config = ConfigDict(populate_by_name=True)

    @model_validator(mode="after")
    def validate_run(self) -> RunConfig:
        raw = any(v is not None for v in (self.alpha, self.beta, self.hbar))
        wave = any(v is not None for v in (self.lambda_, self.h))
        if raw and wave:
            raise ValueError("Supply either alpha/beta/hbar or lambda/h, not both")
        if self.command == "twinslit" and raw:
            raise ValueError("twinslit derives alpha, beta and hbar from lambda and h")
        if self.command != "twinslit" and wave:
            raise ValueError(f"{self.command} takes alpha/beta/hbar, not lambda/h")

        if self.command in _NEEDS_SIZE and self.N is None:
            raise ValueError(f"{self.command} needs a ladder size N")
        sizes = [*((self.N,) if self.N is not None else ()), *(self.sizes or ())]
        for n in sizes:
            if n % 2 or n < 4:
                raise ValueError(
                    f"Ladder size N must be an even integer >= 4, got {n}. "
                    f"A ladder has N/2 vertices per rail, so N must be even."
                )
        return self

    @property
    def scaling(self) -> tuple[float, float, float]:
        """``(alpha, beta, hbar)``, each defaulting to 1."""
        return (
            1.0 if self.alpha is None else self.alpha,
            1.0 if self.beta is None else self.beta,
            1.0 if self.hbar is None else self.hbar,
        )

    @property
    def wave_units(self) -> tuple[float, float]:
        """``(lambda, h)``, each defaulting to 1."""
        return (
            1.0 if self.lambda_ is None else self.lambda_,
            1.0 if self.h is None else self.h,
        )

    def echo(self) -> dict[str, Any]:
        """The configuration as it is embedded in JSON output."""
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)
