"""Dense symmetric eigendecomposition, null-mode identification and source projection."""

from __future__ import annotations

from typing import Literal

import numpy as np
import scipy.linalg

from graph_path_integral.chain_complex import _validate_ladder_size
from graph_path_integral.errors import (
    ConvergenceError,
    DimensionMismatchError,
    NonSymmetricMatrixError,
)
from graph_path_integral.logger import logger
from graph_path_integral.models.kernel import ActionKernel
from graph_path_integral.models.spectral import SourceProjection, SpectralData
from graph_path_integral.settings import NumericsSettings, get_settings

_SYMMETRY_TOLERANCE = 1e-12
_OFF_DIAGONAL_TOLERANCE = 1e-14


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings of 0..n−1 into rounds of disjoint pairs covering every pair once.

    Circle method; an odd ``n`` gets a dummy player whose pairs are dropped.
    """
    players = list(range(n + n % 2))
    dummy = n if n % 2 else None
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if dummy in (a, b):
                continue
            p.append(min(a, b))
            q.append(max(a, b))
        rounds.append((np.array(p, dtype=np.int64), np.array(q, dtype=np.int64)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(matrix: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi rotations in round-robin order.

    Every round applies the rotations of a set of disjoint index pairs at once;
    they act on disjoint rows and columns, so the update is the same as applying
    them one by one.
    """
    a = np.array(matrix, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    threshold = _OFF_DIAGONAL_TOLERANCE * float(np.linalg.norm(a))
    if n < 2:
        return np.diag(a).copy(), v, 0

    rounds = _round_robin(n)
    for sweep in range(1, max_sweeps + 1):
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            cols_p, cols_q = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * cols_p - s * cols_q
            a[:, q] = s * cols_p + c * cols_q
            rows_p, rows_q = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
            a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
            a[p, q] = 0.0
            a[q, p] = 0.0

            vecs_p, vecs_q = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vecs_p - s * vecs_q
            v[:, q] = s * vecs_p + c * vecs_q

        off = _off_diagonal_norm(a)
        logger.debug(f"Jacobi sweep {sweep}: off-diagonal norm {off:.3e}")
        if off < threshold or off == 0.0:
            return np.diag(a).copy(), v, sweep

    raise ConvergenceError(
        f"Jacobi rotations did not converge within {max_sweeps} sweeps "
        f"(off-diagonal norm {_off_diagonal_norm(a):.3e}, target {threshold:.3e})"
    )


def eigendecompose_symmetric(
    matrix: np.ndarray,
    zero_tolerance: float | None = None,
    *,
    method: Literal["auto", "jacobi", "lapack"] = "auto",
    max_sweeps: int = 60,
    jacobi_max_dimension: int = 192,
    zero_tolerance_relative: float = 1e-9,
) -> SpectralData:
    """Eigendecompose a real symmetric matrix and locate its null modes.

    Args:
        matrix: Square real symmetric matrix, typically a graph Laplacian.
        zero_tolerance: Eigenvalues with magnitude below this are null modes.
            Defaults to ``zero_tolerance_relative`` times the largest eigenvalue magnitude.
        method: ``jacobi`` for cyclic Jacobi rotations, ``lapack`` for
            ``scipy.linalg.eigh``, ``auto`` for Jacobi up to ``jacobi_max_dimension``.
        max_sweeps: Sweep cap of the Jacobi solver.
        jacobi_max_dimension: Size limit of the Jacobi solver in ``auto`` mode.
        zero_tolerance_relative: Relative factor of the default tolerance.

    Returns:
        Eigenpairs sorted ascending.

    Raises:
        DimensionMismatchError: If the matrix is not square.
        NonSymmetricMatrixError: If the matrix is not symmetric to 1e-12.
        ConvergenceError: If the Jacobi solver reaches its sweep cap.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Matrix contains non-finite entries")
    scale = max(1.0, float(np.abs(matrix).max(initial=0.0)))
    asymmetry = float(np.abs(matrix - matrix.T).max(initial=0.0))
    if asymmetry > _SYMMETRY_TOLERANCE * scale:
        raise NonSymmetricMatrixError(
            f"Matrix is not symmetric: max |M - Mᵀ| = {asymmetry:.3e}"
        )
    matrix = 0.5 * (matrix + matrix.T)
    n = matrix.shape[0]

    if method == "auto":
        method = "jacobi" if n <= jacobi_max_dimension else "lapack"
        if method == "lapack":
            logger.warning(
                f"Matrix of size {n} exceeds the Jacobi limit {jacobi_max_dimension}; "
                f"using LAPACK"
            )

    sweeps = 0
    if method == "jacobi":
        eigenvalues, eigenvectors, sweeps = _jacobi(matrix, max_sweeps)
        order = np.argsort(eigenvalues, kind="stable")
        eigenvalues, eigenvectors = eigenvalues[order], eigenvectors[:, order]
    elif method == "lapack":
        eigenvalues, eigenvectors = scipy.linalg.eigh(matrix)
    else:
        raise ValueError(f"Unknown eigensolver {method!r}")

    if zero_tolerance is None:
        largest = float(np.abs(eigenvalues).max(initial=0.0))
        zero_tolerance = zero_tolerance_relative * (largest if largest > 0 else 1.0)
    if not zero_tolerance > 0:
        raise ValueError(f"zero_tolerance must be positive, got {zero_tolerance!r}")

    null = np.flatnonzero(np.abs(eigenvalues) < zero_tolerance)
    logger.debug(
        f"Decomposed {n}x{n} matrix with {method} ({sweeps} sweeps), {null.size} null mode(s)"
    )
    return SpectralData(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        zero_tolerance=zero_tolerance,
        null_index=int(null[0]) if null.size else None,
        null_count=int(null.size),
        method=method,
        sweeps=sweeps,
    )


def decompose_kernel(
    kernel: ActionKernel, settings: NumericsSettings | None = None
) -> SpectralData:
    """Decompose the Laplacian of ``kernel`` with the configured solver."""
    settings = settings or get_settings()
    return eigendecompose_symmetric(
        kernel.laplacian,
        method=settings.eigensolver,
        max_sweeps=settings.jacobi_max_sweeps,
        jacobi_max_dimension=settings.jacobi_max_dimension,
        zero_tolerance_relative=settings.zero_tolerance_relative,
    )


def project_source(spectral: SpectralData, J: np.ndarray) -> SourceProjection:
    """Project a source vector onto the eigenbasis: Ĵ_i = ⟨u_i, J⟩.

    The null component is the signed projection on the null mode when there is
    exactly one, and the norm of the projection on the null space otherwise.

    Raises:
        DimensionMismatchError: If ``J`` does not match the eigenbasis.
    """
    J = np.asarray(J, dtype=np.float64)
    if J.shape != (spectral.dimension,):
        raise DimensionMismatchError(
            f"Source has shape {J.shape}, eigenbasis has dimension {spectral.dimension}"
        )
    components = spectral.eigenvectors.T @ J
    mask = spectral.nonzero_mask
    null = components[~mask]
    if null.size == 1:
        null_component = float(null[0])
    else:
        null_component = float(np.linalg.norm(null))
    return SourceProjection(
        components=components,
        null_component=null_component,
        nonzero_mask=tuple(bool(x) for x in mask),
    )


def ladder_spectrum_closed_form(N: int) -> np.ndarray:
    """Ascending Laplacian spectrum of the N-vertex ladder.

    The ladder is the product of a path on N/2 vertices with a single edge, so
    its spectrum is {4sin²(jπ/N)} ∪ {4sin²(jπ/N) + 2} for j = 0..N/2−1.
    """
    _validate_ladder_size(N)
    path = 4.0 * np.sin(np.arange(N // 2) * np.pi / N) ** 2
    return np.sort(np.concatenate([path, path + 2.0]))
