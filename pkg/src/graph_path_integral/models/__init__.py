from graph_path_integral.models.amplitude import (
    AmplitudeReport,
    FresnelEstimate,
    LadderPhaseDecomposition,
    StationaryPoint,
    SymmetryAmplitude,
)
from graph_path_integral.models.graph import (
    BoundaryOperator,
    EdgeRole,
    LadderComplex,
    OrientedGraph,
)
from graph_path_integral.models.kernel import ActionKernel, LinkValues, SccReport
from graph_path_integral.models.reports import CheckResult, VerificationReport
from graph_path_integral.models.run_config import RunConfig
from graph_path_integral.models.spectral import SourceProjection, SpectralData
from graph_path_integral.models.twinslit import TwinSlitConfig, TwinSlitPhase

__all__ = [
    "ActionKernel",
    "AmplitudeReport",
    "BoundaryOperator",
    "CheckResult",
    "EdgeRole",
    "FresnelEstimate",
    "LadderComplex",
    "LadderPhaseDecomposition",
    "LinkValues",
    "OrientedGraph",
    "RunConfig",
    "SccReport",
    "SourceProjection",
    "SpectralData",
    "StationaryPoint",
    "SymmetryAmplitude",
    "TwinSlitConfig",
    "TwinSlitPhase",
    "VerificationReport",
]
