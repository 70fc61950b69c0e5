"""Twin-slit experiment on a pair of uniform ladders."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import numpy as np
import pandas as pd

from graph_path_integral.action import assemble_kernel
from graph_path_integral.amplitude import (
    ladder_phase_closed_form,
    phase_numeric,
    relative_difference,
)
from graph_path_integral.chain_complex import build_canonical_ladder
from graph_path_integral.errors import ConsistencyError
from graph_path_integral.logger import logger
from graph_path_integral.models.graph import EdgeRole, LadderComplex
from graph_path_integral.models.kernel import LinkValues
from graph_path_integral.models.twinslit import TwinSlitConfig, TwinSlitPhase
from graph_path_integral.settings import NumericsSettings, get_settings
from graph_path_integral.spectral import decompose_kernel

PATTERN_COLUMNS = ["e_x_tilde", "delta_phi", "intensity", "n_value", "is_maximum"]

_PHI_ST_TOLERANCE = 1e-10
_DELTA_TOLERANCE = 1e-10
_INTEGER_TOLERANCE = 1e-9


def uniform_ladder_links(ladder: LadderComplex, e_T: float, e_x: float) -> LinkValues:
    """Assign ``e_T`` to every rail edge and ``e_x`` to every rung."""
    values = np.where(
        [role == EdgeRole.SPATIAL for role in ladder.edge_roles], e_x, e_T
    ).astype(np.float64)
    return LinkValues(values=values)


def _slit_phase(
    ladder: LadderComplex,
    e_T: float,
    e_x: float,
    config: TwinSlitConfig,
    settings: NumericsSettings,
) -> tuple[float, float]:
    """Numeric phase of one slit graph and its mixed closed-form term."""
    links = uniform_ladder_links(ladder, e_T, e_x)
    kernel = assemble_kernel(ladder.base, links, config.alpha, config.beta, config.hbar)
    spectral = decompose_kernel(kernel, settings)
    phase = phase_numeric(kernel, spectral, settings.row_space_tolerance)
    closed = ladder_phase_closed_form(
        ladder, links, config.alpha, config.beta, config.hbar
    )
    if abs(closed.phi_st) > _PHI_ST_TOLERANCE * max(1.0, closed.total_inner):
        raise ConsistencyError(
            f"Mixed term of a uniform ladder is {closed.phi_st!r}, expected 0"
        )
    return phase, closed.phi_st


def closed_form_delta(config: TwinSlitConfig) -> float:
    """[(N/2)α²(e_x² − ẽ_x²) + (N − 2)α²(e_T² − ẽ_T²)] / (2ħβ).

    The temporal part vanishes for coherent sources (equal temporal links).
    """
    alpha_sq = config.alpha**2
    spatial = config.N / 2 * alpha_sq * (config.e_x**2 - config.e_x_tilde**2)
    temporal = (config.N - 2) * alpha_sq * (config.e_T**2 - config.slit2_temporal**2)
    return (spatial + temporal) / (2.0 * config.hbar * config.beta)


def twin_slit_phase(
    config: TwinSlitConfig, settings: NumericsSettings | None = None
) -> TwinSlitPhase:
    """Phases of both slit graphs through the full amplitude pipeline.

    The difference is reported as Φ₂ − Φ₁, i.e. with the overall negative sign of
    the phase dropped, and checked against :func:`closed_form_delta`.

    Raises:
        ConsistencyError: If a mixed term is nonzero or the difference disagrees
            with the closed form.
    """
    settings = settings or get_settings()
    if not config.within_assumptions:
        logger.warning(
            f"Slit temporal links differ ({config.e_T} vs {config.slit2_temporal}); "
            f"the sources are not coherent and the result is exploratory"
        )
    ladder = build_canonical_ladder(config.N)
    phi_1, phi_st_1 = _slit_phase(ladder, config.e_T, config.e_x, config, settings)
    phi_2, phi_st_2 = _slit_phase(
        ladder, config.slit2_temporal, config.e_x_tilde, config, settings
    )

    delta = phi_2 - phi_1
    expected = closed_form_delta(config)
    scale = max(abs(expected), abs(phi_1), abs(phi_2))
    if abs(delta - expected) > _DELTA_TOLERANCE * scale:
        raise ConsistencyError(
            f"Phase difference {delta!r} disagrees with the closed form {expected!r}"
        )
    return TwinSlitPhase(
        phi_1=phi_1,
        phi_2=phi_2,
        delta_phi_inner=delta,
        closed_form_delta=expected,
        phi_st_1=phi_st_1,
        phi_st_2=phi_st_2,
        within_assumptions=config.within_assumptions,
    )


def interference_intensity(delta_phi: float) -> float:
    """2 + 2cos(ΔΦ)."""
    return 2.0 + 2.0 * math.cos(delta_phi)


def maxima_condition(config: TwinSlitConfig) -> tuple[float, bool]:
    """``n = (N/2)(e_x² − ẽ_x²)/2`` and whether it is an integer (to 1e-9)."""
    n_value = config.N / 2 * (config.e_x**2 - config.e_x_tilde**2) / 2.0
    return n_value, abs(n_value - round(n_value)) <= _INTEGER_TOLERANCE


def wave_count(ladder: LadderComplex | int, e_x: float) -> tuple[float, float]:
    """Waves carried by the rungs: N·e_x²/4 in total and e_x²/2 per rung."""
    N = ladder.N if isinstance(ladder, LadderComplex) else int(ladder)
    return N * e_x**2 / 4.0, e_x**2 / 2.0


def qm_reference_pattern(v_phi: float, t1: float, t2: float, lambda_: float) -> float:
    """Two-path interference 2 + 2cos(2π·v_φ(t₁ − t₂)/λ)."""
    if not lambda_ > 0:
        raise ValueError(f"lambda must be strictly positive, got {lambda_!r}")
    return 2.0 + 2.0 * math.cos(2.0 * math.pi * v_phi * (t1 - t2) / lambda_)


def photon_reference_pattern(
    t1: float, t2: float, lambda_: float, c: float = 1.0
) -> float:
    """The reference pattern with the speed of light in place of v_φ."""
    return qm_reference_pattern(c, t1, t2, lambda_)


def _pattern_row(
    config: TwinSlitConfig, e_x_tilde: float, settings: NumericsSettings
) -> dict[str, float | bool]:
    row_config = config.model_copy(update={"e_x_tilde": float(e_x_tilde)})
    phase = twin_slit_phase(row_config, settings)
    n_value, is_maximum = maxima_condition(row_config)
    logger.debug(f"e_x_tilde={e_x_tilde}: delta_phi={phase.delta_phi_inner}")
    return {
        "e_x_tilde": float(e_x_tilde),
        "delta_phi": phase.delta_phi_inner,
        "intensity": interference_intensity(phase.delta_phi_inner),
        "n_value": n_value,
        "is_maximum": is_maximum,
    }


def pattern_sweep(
    config: TwinSlitConfig,
    e_x_tilde_values: Iterable[float],
    settings: NumericsSettings | None = None,
    max_workers: int | None = None,
) -> pd.DataFrame:
    """Interference pattern over slit-2 rung values.

    Rows keep the order of ``e_x_tilde_values`` whether or not they are computed
    concurrently.

    Args:
        config: Base configuration; its ``e_x_tilde`` is replaced row by row.
        e_x_tilde_values: Rung values of the slit-2 graph.
        settings: Numerical settings.
        max_workers: Thread count. Falls back to ``settings.max_workers``; ``None``
            computes the rows serially.

    Returns:
        A DataFrame with columns ``e_x_tilde, delta_phi, intensity, n_value, is_maximum``.

    Raises:
        ValueError: If no values are given.
    """
    values = [float(value) for value in e_x_tilde_values]
    if not values:
        raise ValueError("The sweep needs at least one e_x_tilde value")
    settings = settings or get_settings()
    workers = max_workers if max_workers is not None else settings.max_workers

    if workers is None or workers <= 1:
        rows = [_pattern_row(config, value, settings) for value in values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _pattern_row(config, v, settings), values))

    table = pd.DataFrame(rows, columns=PATTERN_COLUMNS)
    logger.info(
        f"Swept {len(table)} values of e_x_tilde, {int(table['is_maximum'].sum())} maxima"
    )
    return table
