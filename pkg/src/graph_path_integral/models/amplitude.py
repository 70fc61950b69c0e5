from __future__ import annotations

from pydantic import Field

from graph_path_integral.models.common import FrozenModel, RealVector


class SymmetryAmplitude(FrozenModel):
    """The row-space restricted Gaussian amplitude and its phase.

    Attributes:
        z: The complex amplitude.
        phase_total: Φ, the sum of ``mode_terms``.
        prefactor_magnitude: Magnitude of the Gaussian prefactor; ``inf`` once it
            overflows a double, in which case ``log_prefactor_magnitude`` is authoritative.
        log_prefactor_magnitude: Natural log of the prefactor magnitude.
        prefactor_phase: Phase of the prefactor on the principal branch.
        mode_terms: −Ĵ_i²/(2 a_i ħ β) for every nonzero mode.
    """

    z: complex
    phase_total: float
    prefactor_magnitude: float
    log_prefactor_magnitude: float
    prefactor_phase: float
    mode_terms: RealVector


class LadderPhaseDecomposition(FrozenModel):
    """Closed-form split of the ladder phase into spatial, temporal and mixed parts.

    Attributes:
        phi_s: Contribution of the rungs alone.
        phi_t: Contribution of the rails alone.
        phi_st: Mixed contribution.
        total_inner: ``phi_s + phi_t + phi_st``.
        phase: −total_inner/(2ħβ).
    """

    phi_s: float
    phi_t: float
    phi_st: float
    total_inner: float
    phase: float


class StationaryPoint(FrozenModel):
    """Extremum of f(Q) = Σ (a_j Q_j²/2 + Ĵ_j Q_j).

    Attributes:
        point: Q_j = −Ĵ_j/a_j.
        value: f at the extremum, Σ −Ĵ_j²/(2a_j).
    """

    point: RealVector
    value: float


class FresnelEstimate(FrozenModel):
    """Regulated quadrature of a single Gaussian mode against its closed form.

    Attributes:
        a: Mode eigenvalue.
        j: Mode source.
        epsilons: Regulator schedule used.
        estimates: Quadrature value at each regulator.
        extrapolated: Estimate extrapolated to a vanishing regulator.
        closed_form: √(2πi/a)·exp(−ij²/2a).
        relative_error: |extrapolated − closed_form| / |closed_form|.
    """

    a: float
    j: float
    epsilons: tuple[float, ...]
    estimates: tuple[complex, ...]
    extrapolated: complex
    closed_form: complex
    relative_error: float


class AmplitudeReport(FrozenModel):
    """Serialisable summary of an amplitude evaluation."""

    N: int
    phase_total: float
    phi_s: float | None = None
    phi_t: float | None = None
    phi_st: float | None = None
    prefactor_magnitude: float
    log_prefactor_magnitude: float
    prefactor_phase: float
    z_real: float
    z_imag: float
    resolved_sum_limits: dict[str, str]
    residuals: dict[str, float] = Field(default_factory=dict)
    config: dict[str, object] = Field(default_factory=dict)
