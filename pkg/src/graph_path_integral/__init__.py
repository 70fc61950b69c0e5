from importlib.metadata import version

from .action import assemble_kernel, check_scc, harmonic_kernel, source_expressions
from .amplitude import (
    RESOLVED_SUM_LIMITS,
    amplitude_report,
    fresnel_mode_integral,
    ladder_phase_closed_form,
    phase_numeric,
    stationary_phase_extremum,
    symmetry_amplitude,
)
from .chain_complex import (
    boundary1,
    boundary2,
    build_canonical_ladder,
    build_six_vertex_fixture,
    coboundary_links,
    verify_boundary_of_boundary,
)
from .settings import NumericsSettings, get_settings
from .spectral import decompose_kernel, eigendecompose_symmetric, project_source
from .twinslit import (
    interference_intensity,
    maxima_condition,
    pattern_sweep,
    qm_reference_pattern,
    twin_slit_phase,
    uniform_ladder_links,
    wave_count,
)
from .verification import run_verification


__version__ = version("graph-path-integral")


__all__ = [
    "RESOLVED_SUM_LIMITS",
    "NumericsSettings",
    "amplitude_report",
    "assemble_kernel",
    "boundary1",
    "boundary2",
    "build_canonical_ladder",
    "build_six_vertex_fixture",
    "check_scc",
    "coboundary_links",
    "decompose_kernel",
    "eigendecompose_symmetric",
    "fresnel_mode_integral",
    "get_settings",
    "harmonic_kernel",
    "interference_intensity",
    "ladder_phase_closed_form",
    "maxima_condition",
    "pattern_sweep",
    "phase_numeric",
    "project_source",
    "qm_reference_pattern",
    "run_verification",
    "source_expressions",
    "stationary_phase_extremum",
    "symmetry_amplitude",
    "twin_slit_phase",
    "uniform_ladder_links",
    "verify_boundary_of_boundary",
    "wave_count",
]
