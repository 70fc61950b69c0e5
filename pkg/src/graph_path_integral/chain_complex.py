"""Oriented ladder graphs, their chain complexes and boundary operators.

All operator arithmetic in this module is exact ``int64`` arithmetic.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _connected_components

from graph_path_integral.errors import DimensionMismatchError, LadderSizeError
from graph_path_integral.logger import logger
from graph_path_integral.models.graph import (
    BoundaryOperator,
    EdgeRole,
    LadderComplex,
    OrientedGraph,
    canonical_edges,
)
from graph_path_integral.models.reports import CheckResult

# Six-vertex, seven-edge fixture: e1=v1→v2, e2=v2→v5, e3=v2→v3, e4=v1→v4,
# e5=v4→v5, e6=v5→v6, e7=v3→v6.
_FIXTURE_EDGES = ((1, 2), (2, 5), (2, 3), (1, 4), (4, 5), (5, 6), (3, 6))
_FIXTURE_PLAQUETTES = (
    ((1, -1), (2, -1), (4, 1), (5, 1)),
    ((2, 1), (3, -1), (6, 1), (7, -1)),
)

# fixture edge index -> canonical ladder edge index (vertices coincide)
FIXTURE_TO_CANONICAL_EDGES: tuple[int, ...] = (1, 6, 2, 5, 3, 4, 7)


def _validate_ladder_size(N: int) -> None:
    if isinstance(N, bool) or int(N) != N or N % 2 or N < 4:
        raise LadderSizeError(
            f"Ladder size N must be an even integer >= 4, got {N!r}. "
            f"A ladder has N/2 vertices per rail, so N must be even."
        )


def build_canonical_ladder(N: int) -> LadderComplex:
    """Build the canonically indexed ladder with ``N`` vertices.

    Rail 1 holds vertices 1..N/2 and rail 2 holds N/2+1..N. Plaquette ``k`` is
    bounded by rungs ``k`` and ``k+1`` and the two rail edges between them, with
    signs ``−rail1 + rail2 + rung_k − rung_{k+1}``.

    Args:
        N: Number of vertices, even and at least 4.

    Returns:
        The ladder with 3N/2 − 2 edges and N/2 − 1 plaquettes.

    Raises:
        LadderSizeError: If ``N`` is odd or smaller than 4.
    """
    _validate_ladder_size(N)
    N = int(N)
    half = N // 2

    plaquettes = tuple(
        (
            (k, -1),
            (half - 1 + k, 1),
            (N - 2 + k, 1),
            (N - 1 + k, -1),
        )
        for k in range(1, half)
    )

    graph = OrientedGraph(
        vertex_count=N, edges=canonical_edges(N), plaquettes=plaquettes
    )
    roles = (
        (EdgeRole.TEMPORAL_RAIL_1,) * (half - 1)
        + (EdgeRole.TEMPORAL_RAIL_2,) * (half - 1)
        + (EdgeRole.SPATIAL,) * half
    )
    ladder = LadderComplex(base=graph, N=N, edge_roles=roles)

    if not verify_boundary_of_boundary(graph).passed:
        raise RuntimeError(f"Canonical ladder N={N} violates ∂₁∂₂ = 0")
    logger.debug(f"Built canonical ladder N={N} with {graph.edge_count} edges")
    return ladder


def build_six_vertex_fixture() -> OrientedGraph:
    """Return the six-vertex, seven-edge, two-plaquette reference graph.

    Its labeling differs from the canonical ladder: the same vertices, with
    edges permuted according to ``FIXTURE_TO_CANONICAL_EDGES``.
    """
    return OrientedGraph(
        vertex_count=6, edges=_FIXTURE_EDGES, plaquettes=_FIXTURE_PLAQUETTES
    )


def fixture_to_canonical_links(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Reorder link values given on the fixture labeling into canonical ladder order."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (len(FIXTURE_TO_CANONICAL_EDGES),):
        raise DimensionMismatchError(
            f"Fixture links need {len(FIXTURE_TO_CANONICAL_EDGES)} entries, got {values.shape}"
        )
    canonical = np.empty_like(values)
    canonical[np.asarray(FIXTURE_TO_CANONICAL_EDGES) - 1] = values
    return canonical


def boundary1(graph: OrientedGraph) -> BoundaryOperator:
    """∂₁: links → vertices. Column j has −1 at tail(j) and +1 at head(j)."""
    entries = np.zeros((graph.vertex_count, graph.edge_count), dtype=np.int64)
    columns = np.arange(graph.edge_count)
    entries[graph.tails, columns] = -1
    entries[graph.heads, columns] = 1
    return BoundaryOperator(degree=1, entries=entries)


def boundary2(graph: OrientedGraph) -> BoundaryOperator:
    """∂₂: plaquettes → links. Column k holds the signed edges of plaquette k."""
    entries = np.zeros((graph.edge_count, graph.plaquette_count), dtype=np.int64)
    for col, plaquette in enumerate(graph.plaquettes):
        for edge, sign in plaquette:
            entries[edge - 1, col] = sign
    return BoundaryOperator(degree=2, entries=entries)


def laplacian(graph: OrientedGraph) -> np.ndarray:
    """Exact integer graph Laplacian ∂₁∂₁ᵀ."""
    d1 = boundary1(graph).entries
    return d1 @ d1.T


def coboundary_links(
    graph: OrientedGraph, v: Sequence[float] | np.ndarray
) -> np.ndarray:
    """Link values induced by vertex values: e_j = v[head(j)] − v[tail(j)].

    Integer input stays integer so that downstream checks can be exact.

    Raises:
        DimensionMismatchError: If ``v`` does not have one entry per vertex.
    """
    v = np.asarray(v)
    if v.shape != (graph.vertex_count,):
        raise DimensionMismatchError(
            f"Vertex vector has shape {v.shape}, expected ({graph.vertex_count},)"
        )
    return v[graph.heads] - v[graph.tails]


def verify_boundary_of_boundary(graph: OrientedGraph) -> CheckResult:
    """Check that ∂₁∂₂ is the exact zero matrix.

    A nonzero product is reported as a failed check, never raised.
    """
    product = boundary1(graph).entries @ boundary2(graph).entries
    residual = int(np.abs(product).max(initial=0))
    return CheckResult(
        name="boundary_of_boundary",
        passed=residual == 0,
        max_residual=float(residual),
        tolerance=0.0,
        detail=f"{graph.vertex_count} vertices, {graph.plaquette_count} plaquettes",
    )


def rank_exact(operator: BoundaryOperator | np.ndarray) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) Gaussian elimination.

    Elimination runs on Python integers so no rounding ever occurs.
    """
    entries = operator.entries if isinstance(operator, BoundaryOperator) else operator
    work = np.array(entries, dtype=object)
    rows, cols = work.shape
    rank, previous_pivot = 0, 1
    for col in range(cols):
        if rank == rows:
            break
        candidates = np.flatnonzero(work[rank:, col] != 0)
        if candidates.size == 0:
            continue
        pivot_row = rank + int(candidates[0])
        if pivot_row != rank:
            work[[rank, pivot_row]] = work[[pivot_row, rank]]
        pivot = work[rank, col]
        below = work[rank + 1 :]
        # Bareiss update; the division is exact
        below[:] = (below * pivot - np.outer(below[:, col], work[rank])) // previous_pivot
        previous_pivot = pivot
        rank += 1
    return rank


def connected_components(graph: OrientedGraph) -> int:
    """Number of connected components, orientation ignored."""
    adjacency = coo_matrix(
        (np.ones(graph.edge_count), (graph.tails, graph.heads)),
        shape=(graph.vertex_count, graph.vertex_count),
    )
    count, _ = _connected_components(adjacency, directed=False)
    return int(count)


def relabel_graph(
    graph: OrientedGraph,
    vertex_permutation: Sequence[int],
    edge_permutation: Sequence[int] | None = None,
) -> OrientedGraph:
    """Relabel vertices and edges.

    Args:
        graph: Graph to relabel.
        vertex_permutation: 1-based new label of every old vertex.
        edge_permutation: 1-based new index of every old edge. Identity if omitted.

    Returns:
        The relabeled graph; orientation and plaquette signs are preserved.
    """
    n, m = graph.vertex_count, graph.edge_count
    if sorted(vertex_permutation) != list(range(1, n + 1)):
        raise ValueError("vertex_permutation must be a permutation of 1..N")
    if edge_permutation is None:
        edge_permutation = list(range(1, m + 1))
    if sorted(edge_permutation) != list(range(1, m + 1)):
        raise ValueError("edge_permutation must be a permutation of the edge indices")

    edges: list[tuple[int, int]] = [(0, 0)] * m
    for old, (tail, head) in enumerate(graph.edges):
        edges[edge_permutation[old] - 1] = (
            vertex_permutation[tail - 1],
            vertex_permutation[head - 1],
        )
    plaquettes = tuple(
        tuple((edge_permutation[edge - 1], sign) for edge, sign in plaquette)
        for plaquette in graph.plaquettes
    )
    return OrientedGraph(vertex_count=n, edges=tuple(edges), plaquettes=plaquettes)


def find_vertex_isomorphism(
    graph_a: OrientedGraph, graph_b: OrientedGraph
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Search all vertex permutations for one mapping ``graph_a`` onto ``graph_b``.

    Edges are matched through their oriented endpoints. The search is exhaustive
    and only meant for small graphs.

    Returns:
        ``(vertex_permutation, edge_permutation)`` as 1-based new labels, or
        ``None`` when the graphs are not isomorphic as oriented graphs.
    """
    if (
        graph_a.vertex_count != graph_b.vertex_count
        or graph_a.edge_count != graph_b.edge_count
    ):
        return None

    target = {edge: idx for idx, edge in enumerate(graph_b.edges, start=1)}
    for perm in itertools.permutations(range(1, graph_a.vertex_count + 1)):
        edge_map = []
        for tail, head in graph_a.edges:
            idx = target.get((perm[tail - 1], perm[head - 1]))
            if idx is None:
                break
            edge_map.append(idx)
        else:
            return tuple(perm), tuple(edge_map)
    return None
