"""Exception types shared across the package."""


class AnalysisError(Exception):
    """Base class for every error raised by nnrange."""


class DimensionMismatch(AnalysisError, ValueError):
    """Vector or matrix dimensions do not line up."""


class ParseError(AnalysisError, ValueError):
    """A network or polyhedron file could not be parsed."""


class InfeasibleSet(AnalysisError):
    """The constraint set is empty."""


class UnboundedSet(AnalysisError):
    """The constraint set is unbounded in a required direction."""


class DegenerateSet(AnalysisError):
    """The set has no interior (largest inscribed ball has radius ~0)."""


class NumericFailure(AnalysisError):
    """The LP kernel stalled or lost numerical consistency."""


class NodeLimitExceeded(AnalysisError):
    """Branch-and-bound explored more nodes than allowed."""


class TimeLimitExceeded(AnalysisError):
    """A solver exceeded its wall-clock budget."""


class TooLarge(AnalysisError):
    """The instance exceeds the hard cap of an exhaustive routine."""


class EmptyGrid(AnalysisError):
    """No grid point fell inside the requested set."""
