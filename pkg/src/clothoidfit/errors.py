"""Exception types raised by the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function (non-finite input,
    coincident endpoints, pole of a series)."""


class RegimeError(ValueError):
    """A regime-specific evaluator was called outside its parameter range."""


class SolverError(RuntimeError):
    """Newton iteration failed; ``report`` carries the final solver state."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SplineError(RuntimeError):
    """Fitting failed for one waypoint pair of a spline."""

    def __init__(self, message, index, cause=None):
        super().__init__(message)
        self.index = index
        self.cause = cause
