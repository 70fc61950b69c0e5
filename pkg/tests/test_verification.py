import numpy as np
import pytest

from graph_path_integral.amplitude import RESOLVED_SUM_LIMITS
from graph_path_integral.errors import LadderSizeError
from graph_path_integral.settings import NumericsSettings
from graph_path_integral.verification import (
    FIXTURE_BOUNDARY1,
    FIXTURE_LAPLACIAN,
    SWEEP_COLUMNS,
    equivalence_sweep,
    run_verification,
)

CHECK_NAMES = [
    "boundary1_regression",
    "boundary2_regression",
    "laplacian_regression",
    "source_pattern_regression",
    "boundary_of_boundary",
    "boundary_of_boundary_detects_flip",
    "laplacian_row_sums",
    "boundary1_rank",
    "scc",
    "harmonic_sign_pattern",
    "fixture_spectrum",
    "fixture_trace",
    "eigenpairs",
    "null_mode",
    "parseval",
    "ladder_spectrum",
    "degenerate_eigenspace",
    "central_equivalence",
    "stationary_phase",
    "fixture_isomorphism",
    "relabel_invariance",
    "scaling_laws",
    "gauge_invariance",
    "uniform_ladder",
    "amplitude_prefactor",
    "fresnel_oracle",
    "twin_slit",
]


@pytest.fixture(scope="module")
def report_n6():
    return run_verification(6, seed=42, trials=4, settings=NumericsSettings())


def test_every_check_passes(report_n6) -> None:
    failed = [check.name for check in report_n6.checks if not check.passed]
    assert failed == []
    assert report_n6.passed


def test_check_order_and_names(report_n6) -> None:
    assert [check.name for check in report_n6.checks] == CHECK_NAMES
    assert report_n6.summary["boundary_of_boundary"] == "pass"
    assert report_n6.summary["laplacian_regression"] == "pass"


def test_report_carries_run_parameters(report_n6) -> None:
    assert (report_n6.N, report_n6.seed, report_n6.trials) == (6, 42, 4)
    assert report_n6.resolved_sum_limits == RESOLVED_SUM_LIMITS
    dumped = report_n6.model_dump(mode="json")
    assert dumped["passed"] is True
    assert dumped["checks"][0]["status"] == "pass"


def test_seeded_runs_are_identical(report_n6) -> None:
    again = run_verification(6, seed=42, trials=4, settings=NumericsSettings())
    assert again.model_dump_json() == report_n6.model_dump_json()


def test_larger_ladder_passes() -> None:
    report = run_verification(12, seed=1, trials=2, settings=NumericsSettings())
    assert report.passed


def test_invalid_arguments() -> None:
    with pytest.raises(LadderSizeError):
        run_verification(7, seed=0, trials=1, settings=NumericsSettings())
    with pytest.raises(ValueError):
        run_verification(6, seed=0, trials=0, settings=NumericsSettings())


def test_fixture_constants_are_consistent() -> None:
    assert np.array_equal(FIXTURE_BOUNDARY1 @ FIXTURE_BOUNDARY1.T, FIXTURE_LAPLACIAN)


def test_equivalence_sweep() -> None:
    table = equivalence_sweep((4, 6, 8), trials=3, seed=9, settings=NumericsSettings())
    assert list(table.columns) == SWEEP_COLUMNS
    assert len(table) == 9
    assert table["N"].tolist() == [4, 4, 4, 6, 6, 6, 8, 8, 8]
    assert table["relative_residual"].max() <= 1e-9


def test_equivalence_sweep_scaling() -> None:
    plain = equivalence_sweep((6,), trials=2, seed=3, settings=NumericsSettings())
    scaled = equivalence_sweep(
        (6,), trials=2, seed=3, alpha=2.0, settings=NumericsSettings()
    )
    assert np.allclose(scaled["phase_numeric"], 4.0 * plain["phase_numeric"])


def test_equivalence_sweep_needs_sizes() -> None:
    with pytest.raises(ValueError):
        equivalence_sweep((), trials=1, seed=0)
