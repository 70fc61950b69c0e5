from __future__ import annotations

import math

from pydantic import ConfigDict, Field, FiniteFloat, PositiveFloat, model_validator

from graph_path_integral.models.common import FrozenModel


class TwinSlitConfig(FrozenModel):
    """Pair of uniform ladders, one per slit, sharing their temporal links.

    The scaling constants are derived from the relational length unit λ and the
    action unit h, and are never set independently.

    Attributes:
        N: Number of vertices of each ladder (even, at least 4).
        e_T: Temporal link value of both graphs.
        e_x: Spatial link value of the slit-1 graph.
        e_x_tilde: Spatial link value of the slit-2 graph.
        lambda_: Relational length unit (``lambda`` in serialised form).
        h: Action unit.
        e_T_tilde: Temporal link value of the slit-2 graph when it differs from
            ``e_T``. Such runs fall outside the coherent-source assumption.
    """

    N: int
    e_T: FiniteFloat
    e_x: FiniteFloat
    e_x_tilde: FiniteFloat
    lambda_: PositiveFloat = Field(default=1.0, alias="lambda")
    h: PositiveFloat = 1.0
    e_T_tilde: FiniteFloat | None = None

    model_config = ConfigDict(populate_by_name=True)

    @model_validator(mode="after")
    def validate_size(self) -> TwinSlitConfig:
        if self.N % 2 or self.N < 4:
            raise ValueError(f"Ladder size must be an even integer >= 4, got {self.N}")
        return self

    @property
    def alpha(self) -> float:
        return self.h / self.lambda_

    @property
    def beta(self) -> float:
        return self.h / self.lambda_**2

    @property
    def hbar(self) -> float:
        return self.h / (2 * math.pi)

    @property
    def slit2_temporal(self) -> float:
        return self.e_T if self.e_T_tilde is None else self.e_T_tilde

    @property
    def within_assumptions(self) -> bool:
        return self.slit2_temporal == self.e_T


class TwinSlitPhase(FrozenModel):
    """Per-slit phases from the full amplitude pipeline.

    Attributes:
        phi_1: Phase of the slit-1 ladder.
        phi_2: Phase of the slit-2 ladder.
        delta_phi_inner: ``phi_2 − phi_1``, i.e. the phase difference with the
            overall negative sign dropped.
        closed_form_delta: The same difference from the uniform-link closed form.
        phi_st_1: Mixed closed-form term of slit 1.
        phi_st_2: Mixed closed-form term of slit 2.
        within_assumptions: False when the two graphs have unequal temporal links.
    """

    phi_1: float
    phi_2: float
    delta_phi_inner: float
    closed_form_delta: float
    phi_st_1: float
    phi_st_2: float
    within_assumptions: bool
