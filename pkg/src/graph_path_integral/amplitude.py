"""The row-space restricted symmetry amplitude, its phase and the consistency oracles.

Eigenvalues are always those of the Laplacian L; β and ħ are applied where each
formula needs them, so the amplitude prefactor (eigenvalues of A = βL) and the
phase (which divides by ħβ explicitly) share one spectrum.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
import scipy.fft
from scipy.integrate import simpson
from scipy.interpolate import barycentric_interpolate

from graph_path_integral.chain_complex import build_canonical_ladder
from graph_path_integral.errors import (
    ConsistencyError,
    DimensionMismatchError,
    DisconnectedGraphError,
    DivergentModeError,
    NonCanonicalLadderError,
    SourceOutsideRowSpaceError,
)
from graph_path_integral.logger import logger
from graph_path_integral.models.amplitude import (
    AmplitudeReport,
    FresnelEstimate,
    LadderPhaseDecomposition,
    StationaryPoint,
    SymmetryAmplitude,
)
from graph_path_integral.models.graph import LadderComplex, OrientedGraph
from graph_path_integral.models.kernel import ActionKernel, LinkValues
from graph_path_integral.models.spectral import SpectralData
from graph_path_integral.spectral import project_source

RESOLVED_SUM_LIMITS: dict[str, str] = {
    "phi_s": "k = 1..N/2 over rungs e_{k+N-2}",
    "phi_t": "j = 1..N/2-1; k = 1..N/2-1 over rail pairs (e_k + e_{k+N/2-1})",
    "phi_st": (
        "j = 1..N/2-1; temporal k = 1..N/2-1 over (e_k - e_{k+N/2-1}); "
        "spatial k = 1..N/2 over rungs e_{k+N-2}; weight 4α²/(N(1 + 2sin²(jπ/N)))"
    ),
}
"""Summation ranges of the closed-form ladder phase, as evaluated."""

DEFAULT_FRESNEL_EPSILONS: tuple[float, ...] = (0.02, 0.01, 0.005, 0.0025)

# Simpson samples per period of the fastest oscillation in the window
_SAMPLES_PER_PERIOD = 32


def relative_difference(a: float, b: float) -> float:
    """|a − b| / max(|a|, |b|), with 0 when both vanish."""
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _nonzero_modes(
    kernel: ActionKernel, spectral: SpectralData, row_space_tolerance: float
) -> tuple[np.ndarray, np.ndarray]:
    """Nonzero eigenvalues and source projections, after the connectivity and
    row-space checks."""
    if spectral.dimension != kernel.vertex_count:
        raise DimensionMismatchError(
            f"Spectrum has dimension {spectral.dimension}, kernel has "
            f"{kernel.vertex_count} vertices"
        )
    if spectral.null_count != 1:
        raise DisconnectedGraphError(
            f"Expected exactly one null mode, found {spectral.null_count}; "
            f"the graph is disconnected or the tolerance is wrong"
        )
    projection = project_source(spectral, kernel.J)
    norm = float(np.linalg.norm(kernel.J))
    if abs(projection.null_component) > row_space_tolerance * norm:
        raise SourceOutsideRowSpaceError(
            f"Source has null-mode component {projection.null_component:.3e} "
            f"(|J| = {norm:.3e})"
        )
    return spectral.eigenvalues[spectral.nonzero_mask], projection.nonzero_components


def _mode_terms(
    kernel: ActionKernel, spectral: SpectralData, row_space_tolerance: float
) -> tuple[np.ndarray, np.ndarray]:
    eigenvalues, j_hat = _nonzero_modes(kernel, spectral, row_space_tolerance)
    terms = -(j_hat**2) / (2.0 * eigenvalues * kernel.hbar * kernel.beta)
    return eigenvalues, terms


def phase_numeric(
    kernel: ActionKernel, spectral: SpectralData, row_space_tolerance: float = 1e-10
) -> float:
    """Φ = −Σ Ĵ_i²/(2 a_i ħ β) over the nonzero modes of the Laplacian.

    Raises:
        DisconnectedGraphError: If the spectrum does not have exactly one null mode.
        SourceOutsideRowSpaceError: If the source has a significant null component.
    """
    _, terms = _mode_terms(kernel, spectral, row_space_tolerance)
    return float(terms.sum())


def symmetry_amplitude(
    kernel: ActionKernel, spectral: SpectralData, row_space_tolerance: float = 1e-10
) -> SymmetryAmplitude:
    """Gaussian amplitude restricted to the row space of the kernel.

    Z = Π_j √(2πi/(βa_j)) · exp(iΦ) with the product over nonzero modes. The square
    root takes the principal branch, so each factor contributes a phase of
    ±π/4 following the sign of β. The prefactor phase is reported unwrapped.
    """
    eigenvalues, terms = _mode_terms(kernel, spectral, row_space_tolerance)
    scaled = kernel.beta * eigenvalues
    log_magnitude = float(0.5 * np.sum(np.log(2.0 * math.pi) - np.log(np.abs(scaled))))
    prefactor_phase = float(np.sum(np.where(scaled > 0, math.pi / 4, -math.pi / 4)))
    phase_total = float(terms.sum())

    magnitude = math.exp(log_magnitude) if log_magnitude < 709.0 else math.inf
    angle = prefactor_phase + phase_total
    if math.isfinite(magnitude):
        z = complex(magnitude * math.cos(angle), magnitude * math.sin(angle))
    else:
        z = complex(
            math.copysign(math.inf, math.cos(angle)),
            math.copysign(math.inf, math.sin(angle)),
        )

    return SymmetryAmplitude(
        z=z,
        phase_total=phase_total,
        prefactor_magnitude=magnitude,
        log_prefactor_magnitude=log_magnitude,
        prefactor_phase=prefactor_phase,
        mode_terms=terms,
    )


def _ensure_canonical(ladder: LadderComplex | OrientedGraph) -> LadderComplex:
    if isinstance(ladder, LadderComplex):
        return ladder
    n = ladder.vertex_count
    if n % 2 or n < 4:
        raise NonCanonicalLadderError(f"A ladder needs an even N >= 4, got {n}")
    canonical = build_canonical_ladder(n)
    if ladder.edges != canonical.base.edges:
        raise NonCanonicalLadderError(
            "Edges do not follow the canonical rail-1, rail-2, rung ordering"
        )
    return canonical


def _half_dst1(values: np.ndarray) -> np.ndarray:
    """Σ_{k=1}^{M} x_k sin(πjk/(M+1)) for j = 1..M."""
    if values.size == 1:
        return values.copy()
    return scipy.fft.dst(values, type=1) / 2.0


def ladder_phase_closed_form(
    ladder: LadderComplex | OrientedGraph,
    links: LinkValues | Sequence[float] | np.ndarray,
    alpha: float = 1.0,
    beta: float = 1.0,
    hbar: float = 1.0,
) -> LadderPhaseDecomposition:
    """Closed-form phase of a canonically indexed ladder.

    The ladder Laplacian is the product of a path and a single edge, so its
    eigenvectors are cosines along the rails, symmetric or antisymmetric across
    them. The rung-only sum comes from the antisymmetric constant mode, the
    rail-only sum from the symmetric modes and the mixed sum from the
    antisymmetric non-constant modes. The inner sums are sine and cosine
    transforms, evaluated with scipy's DST-I and DCT-II.

    Raises:
        NonCanonicalLadderError: If the graph is not in canonical ladder indexing.
        DimensionMismatchError: If the link count differs from 3N/2 − 2.
    """
    ladder = _ensure_canonical(ladder)
    e = links.values if isinstance(links, LinkValues) else np.asarray(links, float)
    if e.shape != (ladder.base.edge_count,):
        raise DimensionMismatchError(
            f"Got {e.size} link values for a ladder with {ladder.base.edge_count} edges"
        )
    N = ladder.N
    rail1, rail2, rungs = e[ladder.rail1_edges], e[ladder.rail2_edges], e[ladder.rung_edges]
    alpha_sq = alpha * alpha

    phi_s = 2.0 * alpha_sq / N * rungs.sum() ** 2

    rail_sums = _half_dst1(rail1 + rail2)
    phi_t = float(2.0 * alpha_sq / N * np.sum(rail_sums**2))

    j = np.arange(1, N // 2)
    sin_j = np.sin(j * np.pi / N)
    rail_differences = _half_dst1(rail1 - rail2)
    rung_cosines = scipy.fft.dct(rungs, type=2)[1:] / 2.0
    weights = 4.0 * alpha_sq / (N * (1.0 + 2.0 * sin_j**2))
    phi_st = float(np.sum(weights * (sin_j * rail_differences + rung_cosines) ** 2))

    total = float(phi_s + phi_t + phi_st)
    return LadderPhaseDecomposition(
        phi_s=float(phi_s),
        phi_t=phi_t,
        phi_st=phi_st,
        total_inner=total,
        phase=-total / (2.0 * hbar * beta),
    )


def stationary_phase_extremum(
    eigenvalues: SpectralData | np.ndarray,
    J_hat: np.ndarray,
    kernel: ActionKernel | None = None,
    tolerance: float = 1e-12,
) -> StationaryPoint:
    """Extremum of f(Q) = Σ (a_j Q_j²/2 + Ĵ_j Q_j).

    Args:
        eigenvalues: Nonzero eigenvalues, or a spectrum whose nonzero modes are used.
        J_hat: Projections paired with ``eigenvalues``; with a spectrum, either all
            components or the nonzero ones.
        kernel: When given, the extremal value divided by ħβ is checked against
            :func:`phase_numeric` for this kernel.
        tolerance: Relative tolerance of that check.

    Raises:
        DivergentModeError: If a supplied eigenvalue is zero.
        ConsistencyError: If the check against the numeric phase fails.
    """
    J_hat = np.asarray(J_hat, dtype=np.float64)
    spectral = eigenvalues if isinstance(eigenvalues, SpectralData) else None
    if spectral is not None:
        mask = spectral.nonzero_mask
        a = spectral.eigenvalues[mask]
        if J_hat.shape == mask.shape:
            J_hat = J_hat[mask]
    else:
        a = np.asarray(eigenvalues, dtype=np.float64)
    if a.shape != J_hat.shape:
        raise DimensionMismatchError(
            f"{a.size} eigenvalues paired with {J_hat.size} projections"
        )
    if np.any(a == 0):
        raise DivergentModeError("Stationary point undefined for a zero eigenvalue")

    point = -J_hat / a
    value = float(np.sum(-(J_hat**2) / (2.0 * a)))

    if kernel is not None:
        if spectral is None:
            raise ValueError("Checking against the kernel phase needs the full spectrum")
        expected = phase_numeric(kernel, spectral)
        rescaled = value / (kernel.hbar * kernel.beta)
        if relative_difference(rescaled, expected) > tolerance:
            raise ConsistencyError(
                f"Stationary value {rescaled!r} disagrees with the phase {expected!r}"
            )
    return StationaryPoint(point=point, value=value)


def fresnel_closed_form(a: float, j: float) -> complex:
    """√(2πi/a)·exp(−ij²/(2a)) on the principal branch."""
    if a == 0:
        raise DivergentModeError("The Gaussian mode with a = 0 diverges")
    return np.sqrt(2j * np.pi / a) * np.exp(-1j * j * j / (2.0 * a))


def _regulated_quadrature(a: float, j: float, epsilon: float) -> complex:
    half_width = 10.0 / math.sqrt(epsilon)
    fastest = abs(a) * half_width + abs(j)
    step = 2.0 * math.pi / (_SAMPLES_PER_PERIOD * max(fastest, 1.0))
    count = 2 * math.ceil(half_width / step) + 1
    q, dq = np.linspace(-half_width, half_width, count, retstep=True)
    integrand = np.exp(1j * (0.5 * a * q * q + j * q) - epsilon * q * q)
    return complex(simpson(integrand.real, dx=dq), simpson(integrand.imag, dx=dq))


def fresnel_mode_integral(
    a: float, j: float, epsilons: Sequence[float] | None = None
) -> FresnelEstimate:
    """Regulated quadrature of ∫exp(i(aq²/2 + jq))dq, extrapolated to no regulator.

    Each estimate integrates exp(i(aq²/2 + jq) − εq²) with Simpson's rule over
    a window of width 20/√ε. The estimates are extrapolated to ε = 0 with the
    polynomial through all of them.

    Raises:
        DivergentModeError: If ``a`` is zero.
        ValueError: If ``epsilons`` is empty, not positive or not decreasing.
    """
    if a == 0:
        raise DivergentModeError(
            "The Gaussian mode with a = 0 diverges; it is excluded by the row-space restriction"
        )
    epsilons = tuple(DEFAULT_FRESNEL_EPSILONS if epsilons is None else epsilons)
    if not epsilons or any(eps <= 0 for eps in epsilons):
        raise ValueError("epsilons must be a non-empty sequence of positive numbers")
    if any(later >= earlier for earlier, later in zip(epsilons, epsilons[1:])):
        raise ValueError("epsilons must be strictly decreasing")

    estimates = tuple(_regulated_quadrature(a, j, eps) for eps in epsilons)
    if len(estimates) == 1:
        extrapolated = estimates[0]
    else:
        values = np.array(estimates)
        extrapolated = complex(
            float(barycentric_interpolate(epsilons, values.real, 0.0)),
            float(barycentric_interpolate(epsilons, values.imag, 0.0)),
        )
    closed = complex(fresnel_closed_form(a, j))
    error = abs(extrapolated - closed) / abs(closed)
    logger.debug(f"Fresnel mode a={a}, j={j}: relative error {error:.2e}")
    return FresnelEstimate(
        a=a,
        j=j,
        epsilons=epsilons,
        estimates=estimates,
        extrapolated=extrapolated,
        closed_form=closed,
        relative_error=error,
    )


def amplitude_report(
    kernel: ActionKernel,
    spectral: SpectralData,
    ladder: LadderComplex | None = None,
    config: dict[str, object] | None = None,
    row_space_tolerance: float = 1e-10,
) -> AmplitudeReport:
    """Evaluate the amplitude and collect it with its cross-check residuals.

    With a canonical ``ladder`` the closed-form split of the phase is added and
    its relative difference from the numeric phase recorded.
    """
    amplitude = symmetry_amplitude(kernel, spectral, row_space_tolerance)
    projection = project_source(spectral, kernel.J)
    stationary = stationary_phase_extremum(spectral, projection.components)

    residuals = {
        "mode_sum": abs(float(np.sum(amplitude.mode_terms)) - amplitude.phase_total),
        "stationary_phase": relative_difference(
            stationary.value / (kernel.hbar * kernel.beta), amplitude.phase_total
        ),
        "null_projection": abs(projection.null_component),
    }
    closed = None
    if ladder is not None:
        closed = ladder_phase_closed_form(
            ladder, kernel.links, kernel.alpha, kernel.beta, kernel.hbar
        )
        residuals["closed_form"] = relative_difference(closed.phase, amplitude.phase_total)

    return AmplitudeReport(
        N=kernel.vertex_count,
        phase_total=amplitude.phase_total,
        phi_s=closed.phi_s if closed else None,
        phi_t=closed.phi_t if closed else None,
        phi_st=closed.phi_st if closed else None,
        prefactor_magnitude=amplitude.prefactor_magnitude,
        log_prefactor_magnitude=amplitude.log_prefactor_magnitude,
        prefactor_phase=amplitude.prefactor_phase,
        z_real=amplitude.z.real,
        z_imag=amplitude.z.imag,
        resolved_sum_limits=dict(RESOLVED_SUM_LIMITS),
        residuals=residuals,
        config=config or {},
    )
