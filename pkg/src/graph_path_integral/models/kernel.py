from __future__ import annotations

import math

import numpy as np
from pydantic import model_validator

from graph_path_integral.models.common import FrozenModel, RealMatrix, RealVector


class LinkValues(FrozenModel):
    """Dimensionless link magnitudes e_i, one per edge, in edge order."""

    values: RealVector

    def __len__(self) -> int:
        return self.values.shape[0]


class ActionKernel(FrozenModel):
    """The quadratic action kernel built from a chain complex and its link values.

    The graph Laplacian is kept separately from ``A`` so that its eigenvalues can
    be used directly; β and ħ are applied at each formula site.

    Attributes:
        laplacian: L = ∂₁∂₁ᵀ.
        A: β·L.
        J: α·∂₁e, one entry per vertex.
        links: The link values the source was built from.
        alpha: Source scaling (momentum).
        beta: Kernel scaling (momentum per length).
        hbar: Action scale, strictly positive.
    """

    laplacian: RealMatrix
    A: RealMatrix
    J: RealVector
    links: RealVector
    alpha: float
    beta: float
    hbar: float

    @model_validator(mode="after")
    def validate_kernel(self) -> ActionKernel:
        for name in ("alpha", "beta", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("alpha and beta must be non-zero")
        if self.hbar <= 0:
            raise ValueError("hbar must be strictly positive")
        n = self.laplacian.shape[0]
        if self.laplacian.shape != (n, n) or self.A.shape != (n, n):
            raise ValueError("Kernel matrices must be square and of equal size")
        if self.J.shape != (n,):
            raise ValueError(f"Source has {self.J.shape[0]} entries, expected {n}")
        if not np.array_equal(self.laplacian, self.laplacian.T):
            raise ValueError("Laplacian must be symmetric")
        # round-off of ∂₁e scales with the links, not with the (possibly cancelling) J
        scale = max(
            np.abs(self.J).sum(), abs(self.alpha) * np.abs(self.links).sum(), 1e-300
        )
        if abs(self.J.sum()) > 1e-12 * scale:
            raise ValueError("Source entries must sum to zero")
        return self

    @property
    def vertex_count(self) -> int:
        return self.laplacian.shape[0]

    @property
    def edge_count(self) -> int:
        return self.links.shape[0]


class SccReport(FrozenModel):
    """Residual of the self-consistency criterion A·v = (β/α)·J.

    Attributes:
        lhs: A·v.
        rhs: (β/α)·J with J built from e = ∂₁ᵀv.
        max_residual: Largest absolute entry of ``lhs − rhs``.
        exact: Whether both sides were compared in exact rational arithmetic.
    """

    lhs: RealVector
    rhs: RealVector
    max_residual: float
    exact: bool

    @property
    def passed(self) -> bool:
        return self.max_residual == 0.0 if self.exact else self.max_residual <= 1e-9 * max(
            1.0, float(np.abs(self.lhs).max(initial=0.0))
        )
