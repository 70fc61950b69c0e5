from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import NonNegativeInt, PositiveFloat, model_validator

from graph_path_integral.models.common import FrozenModel, RealMatrix, RealVector


class SpectralData(FrozenModel):
    """Ascending eigenpairs of a Laplacian and its identified null modes.

    Attributes:
        eigenvalues: Ascending eigenvalues a_1 ≤ … ≤ a_N.
        eigenvectors: Orthonormal eigenvectors, column i paired with eigenvalue i.
        zero_tolerance: Eigenvalues below this are null modes.
        null_index: Index of the smallest null mode, ``None`` if there is none.
        null_count: Number of eigenvalues below ``zero_tolerance``.
        method: Solver that produced the decomposition.
        sweeps: Jacobi sweeps used (0 for LAPACK).
    """

    eigenvalues: RealVector
    eigenvectors: RealMatrix
    zero_tolerance: PositiveFloat
    null_index: NonNegativeInt | None
    null_count: NonNegativeInt
    method: Literal["jacobi", "lapack"]
    sweeps: NonNegativeInt = 0

    @model_validator(mode="after")
    def validate_pairs(self) -> SpectralData:
        n = self.eigenvalues.shape[0]
        if self.eigenvectors.shape != (n, n):
            raise ValueError(
                f"Eigenvector matrix has shape {self.eigenvectors.shape}, expected {(n, n)}"
            )
        if np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("Eigenvalues must be sorted ascending")
        return self

    @property
    def dimension(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def nonzero_mask(self) -> np.ndarray:
        return np.abs(self.eigenvalues) >= self.zero_tolerance

    @property
    def null_vector(self) -> np.ndarray | None:
        if self.null_index is None:
            return None
        return self.eigenvectors[:, self.null_index]


class SourceProjection(FrozenModel):
    """Components of a source vector in an eigenbasis.

    Attributes:
        components: Ĵ_i = ⟨u_i, J⟩ for every eigenvector, null mode included.
        null_component: The component along the null mode (0 if there is none).
        nonzero_mask: Which components belong to nonzero modes.
    """

    components: RealVector
    null_component: float
    nonzero_mask: tuple[bool, ...]

    @property
    def nonzero_components(self) -> np.ndarray:
        return self.components[np.asarray(self.nonzero_mask, dtype=bool)]
