"""Assembly of the quadratic action kernel and the self-consistency criterion."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral
from typing import Sequence

import numpy as np

from graph_path_integral.chain_complex import (
    _validate_ladder_size,
    boundary1,
    coboundary_links,
)
from graph_path_integral.errors import DimensionMismatchError, InvalidScalingError
from graph_path_integral.logger import logger
from graph_path_integral.models.graph import OrientedGraph
from graph_path_integral.models.kernel import ActionKernel, LinkValues, SccReport


def _validate_scaling(alpha: float, beta: float, hbar: float) -> None:
    for name, value in (("alpha", alpha), ("beta", beta), ("hbar", hbar)):
        if not math.isfinite(value):
            raise InvalidScalingError(f"{name} must be finite, got {value!r}")
    if alpha == 0:
        raise InvalidScalingError("alpha must be non-zero")
    if beta == 0:
        raise InvalidScalingError("beta must be non-zero")
    if hbar <= 0:
        raise InvalidScalingError(f"hbar must be strictly positive, got {hbar!r}")


def assemble_kernel(
    graph: OrientedGraph,
    links: LinkValues | Sequence[float] | np.ndarray,
    alpha: float = 1.0,
    beta: float = 1.0,
    hbar: float = 1.0,
) -> ActionKernel:
    """Build A = β∂₁∂₁ᵀ and J = α∂₁e for a graph and its link values.

    Args:
        graph: The oriented graph.
        links: One value per edge, in edge order.
        alpha: Source scaling, non-zero.
        beta: Kernel scaling, non-zero.
        hbar: Action scale, strictly positive.

    Returns:
        The kernel, carrying the Laplacian and the three scaling constants.

    Raises:
        DimensionMismatchError: If the link count differs from the edge count.
        InvalidScalingError: If alpha or beta is zero or hbar is not positive.
    """
    values = links.values if isinstance(links, LinkValues) else np.asarray(links, float)
    if values.shape != (graph.edge_count,):
        raise DimensionMismatchError(
            f"Got {values.size} link values for a graph with {graph.edge_count} edges"
        )
    _validate_scaling(alpha, beta, hbar)

    d1 = boundary1(graph).entries
    lap = (d1 @ d1.T).astype(np.float64)
    kernel = ActionKernel(
        laplacian=lap,
        A=beta * lap,
        J=alpha * (d1 @ values),
        links=values,
        alpha=alpha,
        beta=beta,
        hbar=hbar,
    )
    logger.debug(
        f"Assembled kernel: N={graph.vertex_count}, edges={graph.edge_count}, "
        f"alpha={alpha}, beta={beta}, hbar={hbar}"
    )
    return kernel


def source_expressions(graph: OrientedGraph, symbol: str = "e") -> list[str]:
    """Render ∂₁e per vertex as text, e.g. ``"-e1 - e4"``.

    Terms appear in edge order; a link leaving the vertex enters with a minus sign.
    """
    d1 = boundary1(graph).entries
    expressions = []
    for row in d1:
        terms = []
        for edge in np.flatnonzero(row):
            sign = "-" if row[edge] < 0 else "+"
            name = f"{symbol}{edge + 1}"
            if not terms:
                terms.append(name if sign == "+" else f"-{name}")
            else:
                terms.append(f"{sign} {name}")
        expressions.append(" ".join(terms) if terms else "0")
    return expressions


def _is_integral(value) -> bool:
    if isinstance(value, Integral):
        return True
    if isinstance(value, np.ndarray):
        return np.issubdtype(value.dtype, np.integer)
    return False


def check_scc(
    graph: OrientedGraph,
    kernel: ActionKernel,
    v: Sequence[float] | np.ndarray,
) -> SccReport:
    """Residual of A·v = (β/α)·J with the links recomputed as e = ∂₁ᵀv.

    The kernel's own links are ignored: the criterion only holds when the
    links are the coboundary of ``v``. With integer ``v`` both sides are formed
    independently in rational arithmetic, α and β taken at their exact binary
    values, and compared exactly.

    Returns:
        The report; a mismatch is reported, never raised.
    """
    v = np.asarray(v)
    e = coboundary_links(graph, v)
    d1 = boundary1(graph).entries
    alpha, beta = kernel.alpha, kernel.beta

    exact = _is_integral(v)
    if exact:
        a_q, b_q = Fraction(alpha), Fraction(beta)
        lap = d1 @ d1.T
        # α·(A·v) against β·J, both scaled by α
        lhs_q = [a_q * b_q * int(x) for x in lap @ v.astype(np.int64)]
        rhs_q = [b_q * (a_q * int(x)) for x in d1 @ e.astype(np.int64)]
        residual = float(max((abs(l - r) for l, r in zip(lhs_q, rhs_q)), default=0))
        lhs = np.array([float(x / a_q) for x in lhs_q], dtype=np.float64)
        rhs = np.array([float(x / a_q) for x in rhs_q], dtype=np.float64)
    else:
        lhs = kernel.A @ v.astype(np.float64)
        rhs = (beta / alpha) * (alpha * (d1 @ e.astype(np.float64)))
        residual = float(np.abs(lhs - rhs).max(initial=0.0))

    return SccReport(lhs=lhs, rhs=rhs, max_residual=residual, exact=exact)


def harmonic_kernel(N: int, m: float, dt: float, k: float, k12: float) -> np.ndarray:
    """Discrete action matrix of two coupled oscillators over N/2 time steps each.

    Each oscillator contributes a tridiagonal block with diagonal m/Δt + kΔt at
    the end points and 2m/Δt + kΔt inside, and off-diagonal −m/Δt. The coupling
    k₁₂Δt sits on the diagonal of the off-diagonal blocks.

    Raises:
        LadderSizeError: If ``N`` is odd or smaller than 4.
        ValueError: If m, dt or k is not strictly positive.
    """
    _validate_ladder_size(N)
    for name, value in (("m", m), ("dt", dt), ("k", k)):
        if not value > 0:
            raise ValueError(f"{name} must be strictly positive, got {value!r}")

    steps = N // 2
    diagonal = np.full(steps, 2 * m / dt + k * dt)
    diagonal[[0, -1]] = m / dt + k * dt
    block = (
        np.diag(diagonal)
        + np.diag(np.full(steps - 1, -m / dt), 1)
        + np.diag(np.full(steps - 1, -m / dt), -1)
    )
    coupling = k12 * dt * np.eye(steps)
    return np.block([[block, coupling], [coupling, block]])
