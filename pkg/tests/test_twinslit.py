import math

import numpy as np
import pandas as pd
import pytest

from graph_path_integral.chain_complex import build_canonical_ladder
from graph_path_integral.models.twinslit import TwinSlitConfig
from graph_path_integral.settings import NumericsSettings
from graph_path_integral.twinslit import (
    PATTERN_COLUMNS,
    closed_form_delta,
    interference_intensity,
    maxima_condition,
    pattern_sweep,
    photon_reference_pattern,
    qm_reference_pattern,
    twin_slit_phase,
    uniform_ladder_links,
    wave_count,
)


def _config(**overrides) -> TwinSlitConfig:
    values = {"N": 8, "e_T": 1.0, "e_x": 1.5, "e_x_tilde": 1.5}
    values.update(overrides)
    return TwinSlitConfig(**values)


def test_uniform_ladder_links() -> None:
    links = uniform_ladder_links(build_canonical_ladder(6), e_T=0.5, e_x=2.0)
    assert links.values.tolist() == [0.5, 0.5, 0.5, 0.5, 2.0, 2.0, 2.0]


def test_derived_scaling() -> None:
    config = _config(lambda_=2.0, h=3.0)
    assert config.alpha == 1.5
    assert config.beta == 0.75
    assert config.hbar == pytest.approx(3.0 / (2 * math.pi))


def test_closed_form_delta_derived_units() -> None:
    config = TwinSlitConfig(
        N=6, e_T=1.0, e_x=2.0, e_x_tilde=math.sqrt(2.0), lambda_=1.0, h=2 * math.pi
    )
    # α = 2π, β = 2π, ħ = 1: (N/2)α²·2 / (2ħβ) = 3·(2π)²·2 / (4π) = 6π
    assert closed_form_delta(config) == pytest.approx(6 * math.pi)


def test_identical_slits_have_no_phase_difference() -> None:
    phase = twin_slit_phase(_config(), NumericsSettings())
    assert phase.delta_phi_inner == pytest.approx(0.0, abs=1e-12)
    assert phase.closed_form_delta == 0.0
    assert phase.within_assumptions


def test_phase_difference_matches_closed_form() -> None:
    config = TwinSlitConfig(N=6, e_T=1.0, e_x=2.0, e_x_tilde=math.sqrt(2.0))
    phase = twin_slit_phase(config, NumericsSettings())
    # n = 3 waves difference, ΔΦ = 2πn under the derived scaling
    assert phase.delta_phi_inner == pytest.approx(6 * math.pi, rel=1e-10)
    assert phase.delta_phi_inner == pytest.approx(phase.closed_form_delta, rel=1e-10)
    assert abs(phase.phi_st_1) <= 1e-10
    assert abs(phase.phi_st_2) <= 1e-10
    assert phase.phi_1 < phase.phi_2


@pytest.mark.parametrize("N", [4, 10, 20])
def test_phase_difference_over_sizes(N: int) -> None:
    config = _config(N=N, e_T=0.8, e_x=1.7, e_x_tilde=0.4, lambda_=0.5, h=1.3)
    phase = twin_slit_phase(config, NumericsSettings())
    assert phase.delta_phi_inner == pytest.approx(closed_form_delta(config), rel=1e-10)


def test_unequal_temporal_links_are_flagged() -> None:
    config = _config(e_T_tilde=1.4)
    assert not config.within_assumptions
    phase = twin_slit_phase(config, NumericsSettings())
    assert not phase.within_assumptions
    # the temporal part is carried by the closed form
    temporal = (8 - 2) * (1.0 - 1.4**2) / (2 * config.hbar * config.beta)
    assert phase.closed_form_delta == pytest.approx(temporal)
    assert phase.delta_phi_inner == pytest.approx(temporal, rel=1e-10)


@pytest.mark.parametrize(
    "delta, expected", [(0.0, 4.0), (math.pi, 0.0), (math.pi / 2, 2.0)]
)
def test_interference_intensity(delta: float, expected: float) -> None:
    assert interference_intensity(delta) == pytest.approx(expected, abs=1e-12)


def test_maxima_condition() -> None:
    n, is_max = maxima_condition(_config(e_x=1.0, e_x_tilde=math.sqrt(0.5)))
    assert n == pytest.approx(1.0)
    assert is_max

    assert maxima_condition(_config()) == (0.0, True)

    n, is_max = maxima_condition(
        _config(N=6, e_x=1.0, e_x_tilde=math.sqrt(2.0 / 3.0))
    )
    assert n == pytest.approx(0.5)
    assert not is_max


def test_wave_count() -> None:
    assert wave_count(build_canonical_ladder(8), math.sqrt(2.0)) == pytest.approx(
        (4.0, 1.0)
    )
    assert wave_count(6, math.sqrt(4.0 / 3.0)) == pytest.approx((2.0, 2.0 / 3.0))
    assert wave_count(8, 0.0) == (0.0, 0.0)


def test_qm_reference_pattern() -> None:
    assert qm_reference_pattern(1.0, 2.0, 2.0, 0.5) == 4.0
    assert qm_reference_pattern(2.0, 0.25, 0.0, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert qm_reference_pattern(1.0, 3.0, 0.0, 1.0) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        qm_reference_pattern(1.0, 0.0, 0.0, 0.0)


def test_photon_reference_pattern() -> None:
    assert photon_reference_pattern(1.0, 0.0, 1.0) == pytest.approx(4.0)
    assert photon_reference_pattern(0.5, 0.0, 1.0, c=1.0) == pytest.approx(0.0, abs=1e-12)


def test_graph_pattern_matches_reference_at_maxima() -> None:
    """ΔΦ = 2πn lines the graph pattern up with a two-path pattern of path difference nλ."""
    config = _config(e_x=1.5, e_x_tilde=0.5)
    n, is_max = maxima_condition(config)
    assert is_max
    delta = twin_slit_phase(config, NumericsSettings()).delta_phi_inner
    assert interference_intensity(delta) == pytest.approx(
        qm_reference_pattern(1.0, n, 0.0, 1.0), abs=1e-6
    )


def test_pattern_sweep_rows() -> None:
    values = np.linspace(0.0, 2.0, 201)
    table = pattern_sweep(_config(), values, NumericsSettings())

    assert list(table.columns) == PATTERN_COLUMNS
    assert len(table) == 201
    maxima = table[table["is_maximum"]]
    assert sorted(maxima["e_x_tilde"].round(9)) == [0.5, 1.5]
    assert np.allclose(maxima["intensity"], 4.0, atol=1e-6)
    assert np.allclose(maxima["n_value"], [4.0, 0.0])


def test_pattern_sweep_single_value() -> None:
    table = pattern_sweep(_config(), [1.5], NumericsSettings())
    assert len(table) == 1
    assert table.loc[0, "intensity"] == pytest.approx(4.0)
    assert bool(table.loc[0, "is_maximum"])


def test_pattern_sweep_concurrent_matches_serial() -> None:
    values = [0.1, 0.5, 0.9, 1.3, 1.7]
    serial = pattern_sweep(_config(), values, NumericsSettings())
    threaded = pattern_sweep(_config(), values, NumericsSettings(), max_workers=3)
    pd.testing.assert_frame_equal(serial, threaded)


def test_pattern_sweep_maximum_is_local_peak() -> None:
    table = pattern_sweep(_config(), [0.49, 0.5, 0.51], NumericsSettings())
    assert table["is_maximum"].tolist() == [False, True, False]
    assert table.loc[1, "intensity"] >= table["intensity"].max() - 1e-9


def test_pattern_sweep_empty() -> None:
    with pytest.raises(ValueError):
        pattern_sweep(_config(), [], NumericsSettings())


def test_config_rejects_odd_size() -> None:
    with pytest.raises(ValueError):
        _config(N=7)
    with pytest.raises(ValueError):
        _config(lambda_=0.0)
