from pathlib import Path

import numpy as np
import pytest

from graph_path_integral.chain_complex import (
    boundary1,
    boundary2,
    build_canonical_ladder,
    build_six_vertex_fixture,
    coboundary_links,
    connected_components,
    find_vertex_isomorphism,
    fixture_to_canonical_links,
    laplacian,
    rank_exact,
    relabel_graph,
    verify_boundary_of_boundary,
)
from graph_path_integral.errors import DimensionMismatchError, LadderSizeError
from graph_path_integral.export import read_matrix_csv
from graph_path_integral.models.graph import EdgeRole, OrientedGraph

GOLDEN_DIR = Path(__file__).parent / "goldens"


@pytest.mark.parametrize("N", [4, 6, 8, 12, 50])
def test_canonical_ladder_counts(N: int) -> None:
    ladder = build_canonical_ladder(N)
    assert ladder.base.vertex_count == N
    assert ladder.base.edge_count == 3 * N // 2 - 2
    assert ladder.base.plaquette_count == N // 2 - 1
    assert connected_components(ladder.base) == 1


def test_smallest_ladder() -> None:
    ladder = build_canonical_ladder(4)
    assert ladder.base.edges == ((1, 2), (3, 4), (1, 3), (2, 4))
    assert ladder.base.plaquettes == (((1, -1), (2, 1), (3, 1), (4, -1)),)
    assert ladder.edge_roles == (
        EdgeRole.TEMPORAL_RAIL_1,
        EdgeRole.TEMPORAL_RAIL_2,
        EdgeRole.SPATIAL,
        EdgeRole.SPATIAL,
    )


def test_edge_roles_follow_slices() -> None:
    ladder = build_canonical_ladder(8)
    roles = np.array([str(r) for r in ladder.edge_roles])
    assert set(roles[ladder.rail1_edges]) == {"TemporalRail1"}
    assert set(roles[ladder.rail2_edges]) == {"TemporalRail2"}
    assert set(roles[ladder.rung_edges]) == {"Spatial"}
    assert ladder.temporal_mask.sum() == 6
    assert ladder.role(10) == EdgeRole.SPATIAL


@pytest.mark.parametrize("N", [0, 2, 3, 7, -4])
def test_invalid_ladder_size(N: int) -> None:
    with pytest.raises(LadderSizeError):
        build_canonical_ladder(N)


def test_fixture_operators_match_goldens() -> None:
    """The six-vertex fixture reproduces the stored operator matrices exactly."""
    fixture = build_six_vertex_fixture()
    assert np.array_equal(
        boundary1(fixture).entries, read_matrix_csv(GOLDEN_DIR / "boundary1.csv")
    )
    assert np.array_equal(
        boundary2(fixture).entries, read_matrix_csv(GOLDEN_DIR / "boundary2.csv")
    )
    assert np.array_equal(laplacian(fixture), read_matrix_csv(GOLDEN_DIR / "laplacian.csv"))
    assert boundary1(fixture).entries.dtype == np.int64


def test_fixture_laplacian_equals_canonical_ladder() -> None:
    # same vertices, only the edge labels differ
    fixture = build_six_vertex_fixture()
    ladder = build_canonical_ladder(6)
    assert np.array_equal(laplacian(fixture), laplacian(ladder.base))
    assert np.trace(laplacian(fixture)) == 14


@pytest.mark.parametrize("N", range(4, 42, 2))
def test_boundary_of_boundary_is_zero(N: int) -> None:
    ladder = build_canonical_ladder(N)
    product = boundary1(ladder.base).entries @ boundary2(ladder.base).entries
    assert not product.any()
    assert verify_boundary_of_boundary(ladder.base).passed


def test_boundary_of_boundary_fixture() -> None:
    result = verify_boundary_of_boundary(build_six_vertex_fixture())
    assert result.passed
    assert result.status == "pass"
    assert result.max_residual == 0.0


def test_boundary_of_boundary_reports_flipped_sign() -> None:
    """A plaquette with one flipped sign is no longer closed, so the model refuses it;
    the raw product of a flipped ∂₂ column is caught by the check arithmetic."""
    ladder = build_canonical_ladder(6)
    d2 = boundary2(ladder.base).entries.copy()
    d2[0, 0] *= -1
    product = boundary1(ladder.base).entries @ d2
    assert np.abs(product).max() == 2

    with pytest.raises(ValueError):
        OrientedGraph(
            vertex_count=4,
            edges=((1, 2), (3, 4), (1, 3), (2, 4)),
            plaquettes=(((1, 1), (2, 1), (3, 1), (4, -1)),),
        )


def test_laplacian_properties() -> None:
    for N in (4, 10, 30):
        graph = build_canonical_ladder(N).base
        lap = laplacian(graph)
        assert np.array_equal(lap, lap.T)
        assert not lap.sum(axis=1).any()
        degrees = np.bincount(np.concatenate([graph.tails, graph.heads]), minlength=N)
        assert np.array_equal(np.diag(lap), degrees)


@pytest.mark.parametrize("N", [4, 6, 12, 20])
def test_boundary1_rank(N: int) -> None:
    graph = build_canonical_ladder(N).base
    assert rank_exact(boundary1(graph)) == N - 1
    assert rank_exact(boundary2(graph)) == N // 2 - 1


def test_rank_exact_small_matrices() -> None:
    assert rank_exact(np.array([[1, 2], [2, 4]])) == 1
    assert rank_exact(np.array([[0, 0], [0, 0]])) == 0
    assert rank_exact(np.eye(3, dtype=np.int64)) == 3


def test_coboundary_links() -> None:
    graph = build_six_vertex_fixture()
    v = np.array([1, 2, 4, 8, 16, 32])
    e = coboundary_links(graph, v)
    assert e.tolist() == [1, 14, 2, 7, 8, 16, 28]
    assert np.array_equal(e, boundary1(graph).entries.T @ v)

    with pytest.raises(DimensionMismatchError):
        coboundary_links(graph, np.ones(5))


def test_disconnected_graph_components() -> None:
    graph = OrientedGraph(vertex_count=5, edges=((1, 2), (3, 4)))
    assert connected_components(graph) == 3


def test_fixture_isomorphic_to_canonical_ladder() -> None:
    fixture = build_six_vertex_fixture()
    ladder = build_canonical_ladder(6).base
    mapping = find_vertex_isomorphism(fixture, ladder)
    assert mapping is not None
    vertices, edges = mapping
    assert vertices == (1, 2, 3, 4, 5, 6)
    assert edges == (1, 6, 2, 5, 3, 4, 7)


def test_isomorphism_missing() -> None:
    path = OrientedGraph(vertex_count=3, edges=((1, 2), (2, 3)))
    star = OrientedGraph(vertex_count=3, edges=((1, 2), (1, 3)))
    assert find_vertex_isomorphism(path, star) is None
    assert find_vertex_isomorphism(path, build_six_vertex_fixture()) is None


def test_relabel_preserves_laplacian_up_to_permutation() -> None:
    graph = build_canonical_ladder(6).base
    permutation = [3, 1, 6, 2, 5, 4]
    relabeled = relabel_graph(graph, permutation, [7, 6, 5, 4, 3, 2, 1])
    assert verify_boundary_of_boundary(relabeled).passed

    p = np.zeros((6, 6), dtype=np.int64)
    p[np.array(permutation) - 1, np.arange(6)] = 1
    assert np.array_equal(laplacian(relabeled), p @ laplacian(graph) @ p.T)


def test_relabel_rejects_non_permutation() -> None:
    graph = build_canonical_ladder(4).base
    with pytest.raises(ValueError):
        relabel_graph(graph, [1, 1, 2, 3])
    with pytest.raises(ValueError):
        relabel_graph(graph, [1, 2, 3, 4], [1, 2, 3])


def test_fixture_to_canonical_links() -> None:
    canonical = fixture_to_canonical_links([1, 2, 3, 4, 5, 6, 7])
    assert canonical.tolist() == [1, 3, 5, 6, 4, 2, 7]
    with pytest.raises(DimensionMismatchError):
        fixture_to_canonical_links([1, 2, 3])
