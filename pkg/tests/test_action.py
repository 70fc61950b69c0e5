import numpy as np
import pytest

from graph_path_integral.action import (
    assemble_kernel,
    check_scc,
    harmonic_kernel,
    source_expressions,
)
from graph_path_integral.chain_complex import (
    build_canonical_ladder,
    build_six_vertex_fixture,
    laplacian,
)
from graph_path_integral.errors import (
    DimensionMismatchError,
    InvalidScalingError,
    LadderSizeError,
)
from graph_path_integral.models.kernel import LinkValues


def test_fixture_source_pattern() -> None:
    assert source_expressions(build_six_vertex_fixture()) == [
        "-e1 - e4",
        "e1 - e2 - e3",
        "e3 - e7",
        "e4 - e5",
        "e2 + e5 - e6",
        "e6 + e7",
    ]


def test_source_expressions_symbol() -> None:
    assert source_expressions(build_canonical_ladder(4).base, symbol="x")[0] == "-x1 - x3"


def test_assemble_kernel_fixture() -> None:
    graph = build_six_vertex_fixture()
    links = np.arange(1.0, 8.0)
    kernel = assemble_kernel(graph, links, alpha=2.0, beta=3.0, hbar=0.5)
    assert np.array_equal(kernel.laplacian, laplacian(graph))
    assert np.array_equal(kernel.A, 3.0 * laplacian(graph))
    # J = α∂₁e, vertex by vertex
    assert kernel.J.tolist() == [-10.0, -8.0, -8.0, -2.0, 2.0, 26.0]
    assert kernel.J.sum() == 0
    assert (kernel.alpha, kernel.beta, kernel.hbar) == (2.0, 3.0, 0.5)
    assert kernel.edge_count == 7
    assert kernel.vertex_count == 6


def test_assemble_kernel_accepts_link_values() -> None:
    graph = build_canonical_ladder(4).base
    kernel = assemble_kernel(graph, LinkValues(values=[1.0, 1.0, 2.0, 2.0]))
    assert kernel.J.tolist() == [-3.0, -1.0, 1.0, 3.0]


@pytest.mark.parametrize("N", [4, 8, 16])
def test_source_sums_to_zero_and_ones_in_kernel(N: int) -> None:
    graph = build_canonical_ladder(N).base
    rng = np.random.default_rng(N)
    kernel = assemble_kernel(graph, rng.normal(size=graph.edge_count), alpha=1.7)
    assert abs(kernel.J.sum()) <= 1e-12 * np.abs(kernel.J).sum()
    assert np.allclose(kernel.A @ np.ones(N), 0.0)


def test_zero_links_give_zero_source() -> None:
    graph = build_canonical_ladder(6).base
    kernel = assemble_kernel(graph, np.zeros(7))
    assert not kernel.J.any()


def test_assemble_kernel_dimension_mismatch() -> None:
    graph = build_canonical_ladder(6).base
    with pytest.raises(DimensionMismatchError):
        assemble_kernel(graph, np.ones(6))


@pytest.mark.parametrize(
    "scaling",
    [
        {"alpha": 0.0},
        {"beta": 0.0},
        {"hbar": 0.0},
        {"hbar": -1.0},
        {"alpha": float("inf")},
        {"beta": float("nan")},
    ],
)
def test_assemble_kernel_invalid_scaling(scaling: dict) -> None:
    graph = build_canonical_ladder(4).base
    with pytest.raises(InvalidScalingError):
        assemble_kernel(graph, np.ones(4), **scaling)


def test_kernel_is_read_only() -> None:
    kernel = assemble_kernel(build_canonical_ladder(4).base, np.ones(4))
    with pytest.raises(ValueError):
        kernel.J[0] = 1.0


def test_scc_exact_integer_path() -> None:
    graph = build_six_vertex_fixture()
    v = np.array([3, -1, 4, 1, -5, 9])
    kernel = assemble_kernel(graph, np.zeros(7), alpha=2, beta=5)
    report = check_scc(graph, kernel, v)
    assert report.exact
    assert report.max_residual == 0.0
    assert report.passed
    assert np.array_equal(report.lhs, 5 * laplacian(graph) @ v)


@pytest.mark.parametrize("N", [4, 6, 10, 50])
def test_scc_exact_with_real_scaling(N: int) -> None:
    graph = build_canonical_ladder(N).base
    rng = np.random.default_rng(N)
    for _ in range(20):
        v = rng.integers(-50, 51, size=N)
        kernel = assemble_kernel(graph, np.zeros(graph.edge_count), alpha=0.1, beta=0.3)
        report = check_scc(graph, kernel, v)
        assert report.exact
        assert report.max_residual == 0.0
        assert report.passed
        assert np.allclose(report.lhs, 0.3 * laplacian(graph) @ v, atol=1e-12)


def test_scc_float_path() -> None:
    graph = build_canonical_ladder(8).base
    rng = np.random.default_rng(3)
    v = rng.normal(size=8)
    kernel = assemble_kernel(graph, np.zeros(graph.edge_count), alpha=0.3, beta=2.5)
    report = check_scc(graph, kernel, v)
    assert not report.exact
    assert report.passed
    assert np.allclose(report.lhs, report.rhs, atol=1e-12)


def test_scc_constant_vertex_values() -> None:
    graph = build_canonical_ladder(6).base
    kernel = assemble_kernel(graph, np.zeros(7))
    report = check_scc(graph, kernel, np.full(6, 7))
    assert not report.lhs.any()
    assert not report.rhs.any()


def test_harmonic_kernel_blocks() -> None:
    matrix = harmonic_kernel(4, m=1.0, dt=1.0, k=1.0, k12=0.5)
    expected = np.array(
        [
            [2.0, -1.0, 0.5, 0.0],
            [-1.0, 2.0, 0.0, 0.5],
            [0.5, 0.0, 2.0, -1.0],
            [0.0, 0.5, -1.0, 2.0],
        ]
    )
    assert np.allclose(matrix, expected)


def test_harmonic_kernel_sign_pattern() -> None:
    """Off-diagonal entries inside a block are negative, couplings keep the sign of k12."""
    m, dt, k = 2.0, 0.1, 3.0
    matrix = harmonic_kernel(10, m=m, dt=dt, k=k, k12=0.7)
    block = matrix[:5, :5]
    assert np.allclose(matrix, matrix.T)
    assert np.allclose(np.diag(block, 1), -m / dt)
    assert np.isclose(block[0, 0], m / dt + k * dt)
    assert np.isclose(block[2, 2], 2 * m / dt + k * dt)
    assert np.allclose(np.diag(matrix[:5, 5:]), 0.7 * dt)


def test_harmonic_kernel_uncoupled() -> None:
    matrix = harmonic_kernel(6, m=1.0, dt=0.5, k=1.0, k12=0.0)
    assert not matrix[:3, 3:].any()
    assert not matrix[3:, :3].any()


def test_harmonic_kernel_invalid() -> None:
    with pytest.raises(LadderSizeError):
        harmonic_kernel(5, m=1.0, dt=1.0, k=1.0, k12=0.0)
    with pytest.raises(ValueError):
        harmonic_kernel(6, m=0.0, dt=1.0, k=1.0, k12=0.0)
