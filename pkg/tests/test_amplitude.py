import cmath
import math

import numpy as np
import pytest

from graph_path_integral.action import assemble_kernel
from graph_path_integral.amplitude import (
    RESOLVED_SUM_LIMITS,
    amplitude_report,
    fresnel_closed_form,
    fresnel_mode_integral,
    ladder_phase_closed_form,
    phase_numeric,
    relative_difference,
    stationary_phase_extremum,
    symmetry_amplitude,
)
from graph_path_integral.chain_complex import (
    boundary2,
    build_canonical_ladder,
    build_six_vertex_fixture,
)
from graph_path_integral.errors import (
    ConsistencyError,
    DimensionMismatchError,
    DisconnectedGraphError,
    DivergentModeError,
    NonCanonicalLadderError,
    SourceOutsideRowSpaceError,
)
from graph_path_integral.models.graph import OrientedGraph
from graph_path_integral.models.spectral import SpectralData
from graph_path_integral.settings import NumericsSettings
from graph_path_integral.spectral import decompose_kernel, project_source


def _phase(N: int, links: np.ndarray, **scaling: float) -> float:
    graph = build_canonical_ladder(N).base
    kernel = assemble_kernel(graph, links, **scaling)
    return phase_numeric(kernel, decompose_kernel(kernel, NumericsSettings()))


def test_zero_links_zero_phase() -> None:
    assert _phase(6, np.zeros(7)) == 0.0


def test_smallest_ladder_phase_by_hand() -> None:
    """N=4 is a square; one unit rail link gives Φ = −R/2 with R = 3/4."""
    links = np.array([1.0, 0.0, 0.0, 0.0])
    closed = ladder_phase_closed_form(build_canonical_ladder(4), links)
    assert closed.phi_s == 0.0
    assert closed.phi_t == pytest.approx(0.5)
    assert closed.phi_st == pytest.approx(0.25)
    assert closed.phase == pytest.approx(-0.375)
    assert _phase(4, links) == pytest.approx(-0.375, rel=1e-12)


@pytest.mark.parametrize("N", [4, 6, 8, 12, 20])
def test_numeric_phase_matches_closed_form(N: int) -> None:
    ladder = build_canonical_ladder(N)
    rng = np.random.default_rng(N)
    for _ in range(10):
        links = rng.uniform(-2.0, 2.0, size=ladder.base.edge_count)
        numeric = _phase(N, links, alpha=1.3, beta=0.7, hbar=2.0)
        closed = ladder_phase_closed_form(ladder, links, alpha=1.3, beta=0.7, hbar=2.0)
        assert relative_difference(numeric, closed.phase) <= 1e-9
        assert closed.total_inner == pytest.approx(
            closed.phi_s + closed.phi_t + closed.phi_st
        )


@pytest.mark.parametrize("N", [4, 8, 30])
def test_uniform_ladder_mixed_term_vanishes(N: int) -> None:
    alpha, e_T, e_x = 1.5, 1.3, 0.7
    ladder = build_canonical_ladder(N)
    links = np.where(ladder.temporal_mask, e_T, e_x)
    closed = ladder_phase_closed_form(ladder, links, alpha=alpha)
    expected = N / 2 * alpha**2 * e_x**2 + (N - 2) * alpha**2 * e_T**2
    assert abs(closed.phi_st) <= 1e-12 * expected
    assert closed.phi_s + closed.phi_t == pytest.approx(expected, rel=1e-12)


def test_closed_form_accepts_canonical_oriented_graph() -> None:
    links = np.arange(7.0)
    from_ladder = ladder_phase_closed_form(build_canonical_ladder(6), links)
    from_graph = ladder_phase_closed_form(build_canonical_ladder(6).base, links)
    assert from_ladder == from_graph


def test_closed_form_rejects_non_canonical_graphs() -> None:
    with pytest.raises(NonCanonicalLadderError):
        ladder_phase_closed_form(build_six_vertex_fixture(), np.ones(7))
    with pytest.raises(NonCanonicalLadderError):
        ladder_phase_closed_form(
            OrientedGraph(vertex_count=5, edges=((1, 2), (2, 3))), np.ones(2)
        )
    with pytest.raises(DimensionMismatchError):
        ladder_phase_closed_form(build_canonical_ladder(6), np.ones(6))


def test_scaling_laws() -> None:
    links = np.random.default_rng(7).normal(size=10)
    base = _phase(8, links)
    assert _phase(8, links, alpha=3.0) == pytest.approx(9.0 * base, rel=1e-10)
    assert _phase(8, links, beta=4.0) == pytest.approx(base / 4.0, rel=1e-10)
    assert _phase(8, links, hbar=0.5) == pytest.approx(2.0 * base, rel=1e-10)


def test_plaquette_boundaries_leave_phase_unchanged() -> None:
    """Adding the boundary of a plaquette to the links does not change the source."""
    ladder = build_canonical_ladder(8)
    links = np.random.default_rng(11).normal(size=10)
    shifted = links + 2.5 * boundary2(ladder.base).entries[:, 1]
    assert _phase(8, shifted) == pytest.approx(_phase(8, links), rel=1e-10)


def test_fixture_relabeling_leaves_phase_unchanged() -> None:
    fixture = build_six_vertex_fixture()
    fixture_links = np.array([0.3, -1.2, 0.8, 2.0, -0.4, 1.1, 0.6])
    kernel = assemble_kernel(fixture, fixture_links)
    fixture_phase = phase_numeric(kernel, decompose_kernel(kernel, NumericsSettings()))

    # fixture edge i is canonical edge (1, 6, 2, 5, 3, 4, 7)[i]
    canonical_links = np.empty(7)
    canonical_links[[0, 5, 1, 4, 2, 3, 6]] = fixture_links
    assert _phase(6, canonical_links) == pytest.approx(fixture_phase, rel=1e-12)


def test_symmetry_amplitude_fixture() -> None:
    kernel = assemble_kernel(build_six_vertex_fixture(), np.zeros(7))
    amplitude = symmetry_amplitude(kernel, decompose_kernel(kernel, NumericsSettings()))
    expected_log = 0.5 * (5 * math.log(2 * math.pi) - math.log(90.0))
    assert amplitude.phase_total == 0.0
    assert amplitude.log_prefactor_magnitude == pytest.approx(expected_log)
    assert amplitude.prefactor_magnitude == pytest.approx(math.exp(expected_log))
    assert amplitude.prefactor_phase == pytest.approx(5 * math.pi / 4)
    assert amplitude.mode_terms.shape == (5,)
    assert amplitude.z == pytest.approx(cmath.rect(math.exp(expected_log), 5 * math.pi / 4))


def test_symmetry_amplitude_negative_beta_flips_branch() -> None:
    graph = build_canonical_ladder(6).base
    links = np.linspace(-1.0, 1.0, 7)
    kernel = assemble_kernel(graph, links, beta=-2.0)
    amplitude = symmetry_amplitude(kernel, decompose_kernel(kernel, NumericsSettings()))
    assert amplitude.prefactor_phase == pytest.approx(-5 * math.pi / 4)
    angle = amplitude.prefactor_phase + amplitude.phase_total
    assert amplitude.z == pytest.approx(cmath.rect(amplitude.prefactor_magnitude, angle))
    assert amplitude.phase_total == pytest.approx(np.sum(amplitude.mode_terms))


def test_symmetry_amplitude_overflowing_prefactor() -> None:
    kernel = assemble_kernel(build_canonical_ladder(6).base, np.zeros(7), beta=1e-300)
    amplitude = symmetry_amplitude(kernel, decompose_kernel(kernel, NumericsSettings()))
    expected_log = 0.5 * (
        5 * math.log(2 * math.pi) - 5 * math.log(1e-300) - math.log(90.0)
    )
    assert amplitude.log_prefactor_magnitude == pytest.approx(expected_log)
    assert amplitude.prefactor_magnitude == math.inf
    assert math.isinf(amplitude.z.real) and math.isinf(amplitude.z.imag)


def test_disconnected_graph_is_refused() -> None:
    graph = OrientedGraph(vertex_count=4, edges=((1, 2), (3, 4)))
    kernel = assemble_kernel(graph, [1.0, 2.0])
    spectral = decompose_kernel(kernel, NumericsSettings())
    assert spectral.null_count == 2
    with pytest.raises(DisconnectedGraphError):
        phase_numeric(kernel, spectral)


def test_source_outside_row_space_is_refused() -> None:
    kernel = assemble_kernel(build_six_vertex_fixture(), np.arange(1.0, 8.0))
    # a basis whose "null mode" is not the constant vector
    spectral = SpectralData(
        eigenvalues=[0.0, 1.0, 2.0, 3.0, 3.0, 5.0],
        eigenvectors=np.eye(6),
        zero_tolerance=1e-9,
        null_index=0,
        null_count=1,
        method="lapack",
    )
    with pytest.raises(SourceOutsideRowSpaceError):
        phase_numeric(kernel, spectral)


def test_spectrum_dimension_mismatch() -> None:
    kernel = assemble_kernel(build_six_vertex_fixture(), np.zeros(7))
    spectral = decompose_kernel(
        assemble_kernel(build_canonical_ladder(4).base, np.zeros(4)), NumericsSettings()
    )
    with pytest.raises(DimensionMismatchError):
        phase_numeric(kernel, spectral)


def test_stationary_phase_extremum_values() -> None:
    point = stationary_phase_extremum(np.array([1.0, 2.0]), np.array([2.0, -2.0]))
    assert point.point.tolist() == [-2.0, 1.0]
    assert point.value == -3.0

    origin = stationary_phase_extremum(np.array([1.0, 4.0]), np.zeros(2))
    assert origin.value == 0.0
    assert not origin.point.any()


def test_stationary_phase_zero_eigenvalue() -> None:
    with pytest.raises(DivergentModeError):
        stationary_phase_extremum(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
    with pytest.raises(DimensionMismatchError):
        stationary_phase_extremum(np.array([1.0, 1.0]), np.array([1.0]))


def test_stationary_phase_against_kernel() -> None:
    graph = build_canonical_ladder(8).base
    kernel = assemble_kernel(
        graph, np.random.default_rng(2).normal(size=10), beta=2.0, hbar=0.3
    )
    spectral = decompose_kernel(kernel, NumericsSettings())
    components = project_source(spectral, kernel.J).components

    point = stationary_phase_extremum(spectral, components, kernel)
    assert point.value / (kernel.hbar * kernel.beta) == pytest.approx(
        phase_numeric(kernel, spectral), rel=1e-12
    )
    # full and restricted projections give the same extremum
    restricted = stationary_phase_extremum(spectral, components[spectral.nonzero_mask])
    assert restricted.value == point.value

    with pytest.raises(ConsistencyError):
        stationary_phase_extremum(spectral, np.zeros(8), kernel)
    with pytest.raises(ValueError):
        stationary_phase_extremum(
            spectral.eigenvalues[spectral.nonzero_mask],
            components[spectral.nonzero_mask],
            kernel,
        )


def test_fresnel_closed_form() -> None:
    assert fresnel_closed_form(1.0, 0.0) == pytest.approx(
        math.sqrt(2 * math.pi) * cmath.exp(1j * math.pi / 4)
    )
    assert fresnel_closed_form(2.0, 1.0) == pytest.approx(
        math.sqrt(math.pi) * cmath.exp(1j * math.pi / 4) * cmath.exp(-0.25j)
    )
    # principal branch for a negative eigenvalue
    assert fresnel_closed_form(-1.0, 0.0) == pytest.approx(
        math.sqrt(2 * math.pi) * cmath.exp(-1j * math.pi / 4)
    )


@pytest.mark.parametrize(
    "a, j", [(1.0, 0.0), (2.0, 1.0), (1.0, 3.0), (0.5, -2.0), (-1.0, 0.5)]
)
def test_fresnel_quadrature_matches_closed_form(a: float, j: float) -> None:
    estimate = fresnel_mode_integral(a, j)
    assert estimate.relative_error < 1e-3
    assert estimate.closed_form == fresnel_closed_form(a, j)
    assert len(estimate.estimates) == len(estimate.epsilons) == 4


def test_fresnel_zero_mode_diverges() -> None:
    with pytest.raises(DivergentModeError):
        fresnel_mode_integral(0.0, 1.0)
    with pytest.raises(DivergentModeError):
        fresnel_closed_form(0.0, 1.0)


@pytest.mark.parametrize("epsilons", [(), (0.01, 0.02), (0.01, -0.005), (0.01, 0.01)])
def test_fresnel_invalid_regulators(epsilons: tuple) -> None:
    with pytest.raises(ValueError):
        fresnel_mode_integral(1.0, 0.0, epsilons)


def test_amplitude_report_residuals() -> None:
    ladder = build_canonical_ladder(6)
    kernel = assemble_kernel(ladder.base, np.linspace(0.5, 2.0, 7), alpha=2.0)
    spectral = decompose_kernel(kernel, NumericsSettings())
    report = amplitude_report(kernel, spectral, ladder, config={"N": 6})

    assert report.N == 6
    assert report.phase_total == phase_numeric(kernel, spectral)
    assert report.resolved_sum_limits == RESOLVED_SUM_LIMITS
    assert set(report.residuals) == {
        "mode_sum",
        "stationary_phase",
        "null_projection",
        "closed_form",
    }
    assert report.residuals["closed_form"] <= 1e-9
    assert report.residuals["stationary_phase"] <= 1e-12
    assert report.phi_s + report.phi_t + report.phi_st == pytest.approx(
        -2.0 * report.phase_total
    )
    assert report.config == {"N": 6}


def test_amplitude_report_without_ladder() -> None:
    kernel = assemble_kernel(build_six_vertex_fixture(), np.ones(7))
    report = amplitude_report(kernel, decompose_kernel(kernel, NumericsSettings()))
    assert report.phi_s is None
    assert "closed_form" not in report.residuals


def test_relative_difference() -> None:
    assert relative_difference(0.0, 0.0) == 0.0
    assert relative_difference(1.0, 2.0) == 0.5
    assert relative_difference(-1.0, 1.0) == 2.0
