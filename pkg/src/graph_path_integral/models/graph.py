from __future__ import annotations

import sys
from typing import Literal

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # pragma: no cover - Python 3.10 backport of enum.StrEnum
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)

import numpy as np
from pydantic import Field, PositiveInt, model_validator

from graph_path_integral.models.common import FrozenModel, IntMatrix

SignedEdge = tuple[int, Literal[-1, 1]]


class EdgeRole(StrEnum):
    """Role of a ladder edge."""

    TEMPORAL_RAIL_1 = "TemporalRail1"
    TEMPORAL_RAIL_2 = "TemporalRail2"
    SPATIAL = "Spatial"


def canonical_edges(N: int) -> tuple[tuple[int, int], ...]:
    """Edges of the canonical ladder with ``N`` vertices: rail 1, rail 2, then rungs."""
    half = N // 2
    rail1 = [(k, k + 1) for k in range(1, half)]
    rail2 = [(half + k, half + k + 1) for k in range(1, half)]
    rungs = [(k, half + k) for k in range(1, half + 1)]
    return tuple(rail1 + rail2 + rungs)


class OrientedGraph(FrozenModel):
    """An oriented graph with oriented plaquettes (a 2-dimensional cell complex).

    Vertex and edge indices are 1-based, matching the serialised format.

    Attributes:
        vertex_count: Number of vertices N.
        edges: Ordered ``(tail, head)`` pairs.
        plaquettes: Ordered plaquettes, each a sequence of ``(edge, sign)`` incidences.
    """

    vertex_count: PositiveInt
    edges: tuple[tuple[int, int], ...]
    plaquettes: tuple[tuple[SignedEdge, ...], ...] = Field(default_factory=tuple)

    @model_validator(mode="after")
    def validate_edges(self) -> OrientedGraph:
        """Check vertex ranges, self-loops and duplicate oriented edges."""
        seen: set[tuple[int, int]] = set()
        for idx, (tail, head) in enumerate(self.edges, start=1):
            for vertex in (tail, head):
                if not 1 <= vertex <= self.vertex_count:
                    raise ValueError(
                        f"Edge {idx} references vertex {vertex} outside [1, {self.vertex_count}]"
                    )
            if tail == head:
                raise ValueError(f"Edge {idx} is a self-loop on vertex {tail}")
            if (tail, head) in seen:
                raise ValueError(f"Edge {idx} duplicates ({tail}, {head})")
            seen.add((tail, head))
        return self

    @model_validator(mode="after")
    def validate_plaquettes_closed(self) -> OrientedGraph:
        """Check every plaquette is a closed cycle with zero net vertex incidence."""
        for p_idx, plaquette in enumerate(self.plaquettes, start=1):
            net = np.zeros(self.vertex_count + 1, dtype=np.int64)
            for edge, sign in plaquette:
                if not 1 <= edge <= len(self.edges):
                    raise ValueError(
                        f"Plaquette {p_idx} references edge {edge} outside [1, {len(self.edges)}]"
                    )
                tail, head = self.edges[edge - 1]
                net[head] += sign
                net[tail] -= sign
            if np.any(net):
                raise ValueError(f"Plaquette {p_idx} is not a closed cycle")
        return self

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def plaquette_count(self) -> int:
        return len(self.plaquettes)

    @property
    def tails(self) -> np.ndarray:
        """0-based tail vertex of every edge."""
        return np.fromiter((t for t, _ in self.edges), dtype=np.int64) - 1

    @property
    def heads(self) -> np.ndarray:
        """0-based head vertex of every edge."""
        return np.fromiter((h for _, h in self.edges), dtype=np.int64) - 1


class LadderComplex(FrozenModel):
    """A ladder graph in canonical indexing.

    Rail-1 edges come first, then rail-2 edges, then the rungs:

    - edge ``k`` (1 ≤ k ≤ N/2−1): ``v_k → v_{k+1}``
    - edge ``N/2−1+k``: ``v_{N/2+k} → v_{N/2+k+1}``
    - edge ``N−2+k`` (1 ≤ k ≤ N/2): ``v_k → v_{N/2+k}``

    Attributes:
        base: The underlying oriented graph.
        N: Number of vertices (even, at least 4).
        edge_roles: Role of every edge, in edge order.
    """

    base: OrientedGraph
    N: int
    edge_roles: tuple[EdgeRole, ...]

    @model_validator(mode="after")
    def validate_canonical(self) -> LadderComplex:
        n, half = self.N, self.N // 2
        if n % 2 or n < 4:
            raise ValueError(f"Ladder size must be an even integer >= 4, got {n}")
        if self.base.vertex_count != n:
            raise ValueError(f"Base graph has {self.base.vertex_count} vertices, expected {n}")
        if self.base.edge_count != 3 * half - 2:
            raise ValueError(
                f"Ladder with N={n} needs {3 * half - 2} edges, got {self.base.edge_count}"
            )
        if self.base.plaquette_count != half - 1:
            raise ValueError(
                f"Ladder with N={n} needs {half - 1} plaquettes, got {self.base.plaquette_count}"
            )
        expected = (
            [EdgeRole.TEMPORAL_RAIL_1] * (half - 1)
            + [EdgeRole.TEMPORAL_RAIL_2] * (half - 1)
            + [EdgeRole.SPATIAL] * half
        )
        if list(self.edge_roles) != expected:
            raise ValueError("Edge roles do not follow the canonical rail/rung order")
        canonical = canonical_edges(n)
        for idx, (edge, want) in enumerate(zip(self.base.edges, canonical), start=1):
            if edge != want:
                raise ValueError(
                    f"Edge {idx} is {edge}, the canonical ladder has {want} in that position"
                )
        return self

    def role(self, edge: int) -> EdgeRole:
        """Role of the 1-based ``edge``."""
        return self.edge_roles[edge - 1]

    @property
    def rail1_edges(self) -> slice:
        return slice(0, self.N // 2 - 1)

    @property
    def rail2_edges(self) -> slice:
        return slice(self.N // 2 - 1, self.N - 2)

    @property
    def rung_edges(self) -> slice:
        return slice(self.N - 2, 3 * self.N // 2 - 2)

    @property
    def temporal_mask(self) -> np.ndarray:
        return np.array([r != EdgeRole.SPATIAL for r in self.edge_roles])


class BoundaryOperator(FrozenModel):
    """Integer matrix of a boundary map ∂_k : C_k → C_{k−1}.

    Attributes:
        degree: 1 for links → vertices, 2 for plaquettes → links.
        entries: Matrix with entries in {−1, 0, +1}.
    """

    degree: Literal[1, 2]
    entries: IntMatrix

    @model_validator(mode="after")
    def validate_entries(self) -> BoundaryOperator:
        if not np.isin(self.entries, (-1, 0, 1)).all():
            raise ValueError("Boundary operator entries must lie in {-1, 0, +1}")
        if self.degree == 1 and self.entries.size:
            if not (
                np.all((self.entries == -1).sum(axis=0) == 1)
                and np.all((self.entries == 1).sum(axis=0) == 1)
            ):
                raise ValueError("Every link must have exactly one tail and one head")
        return self

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]
