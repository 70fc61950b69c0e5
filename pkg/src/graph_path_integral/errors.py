"""Exceptions raised by ``graph_path_integral``.

Input problems subclass ``ValueError`` and internal cross-check failures
subclass ``RuntimeError``; the command line maps the former to exit code 2
and ``ConsistencyError`` to exit code 1.
"""


class LadderSizeError(ValueError):
    """The requested ladder size is odd or smaller than four vertices."""


class DimensionMismatchError(ValueError):
    """A vector or matrix does not match the dimension of the complex."""


class InvalidScalingError(ValueError):
    """A scaling constant is zero, negative where positivity is required, or not finite."""


class NonSymmetricMatrixError(ValueError):
    """A matrix handed to the symmetric eigensolver is not symmetric."""


class DisconnectedGraphError(ValueError):
    """The Laplacian has more than one null mode."""


class SourceOutsideRowSpaceError(ValueError):
    """The source vector has a significant component along the null mode."""


class DivergentModeError(ValueError):
    """A Gaussian mode with zero eigenvalue was requested."""


class NonCanonicalLadderError(ValueError):
    """A ladder does not follow the canonical rail/rung edge indexing."""


class ConvergenceError(RuntimeError):
    """The Jacobi eigensolver hit its sweep cap before converging."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
