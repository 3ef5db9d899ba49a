"""Exception hierarchy shared by the numerical core, the optimizers and the harness."""

from typing import List, Optional


class KdError(Exception):
    """Base class for every error raised by this package."""

    pass


class NotSquareError(KdError, ValueError):
    """Raised when a square matrix is required."""

    pass


class NotHermitianError(KdError, ValueError):
    """Raised when a matrix deviates from its adjoint beyond tolerance."""

    pass


class InvalidDimensionError(KdError, ValueError):
    """Raised for a Hilbert-space dimension below 1."""

    pass


class InvalidRankError(KdError, ValueError):
    """Raised when a requested rank is outside ``1 <= rank <= d``."""

    pass


class DimensionMismatchError(KdError, ValueError):
    """Raised when states, bases or observables live on different dimensions."""

    pass


class ZeroPostselectionProbabilityError(KdError, ValueError):
    """Raised when a weak value is requested for a postselection probability below threshold."""

    pass


class ZeroOperatorError(KdError, ValueError):
    """Raised when an operator with vanishing operator norm has to be normalized."""

    pass


class DegenerateShiftedOperatorError(KdError, ValueError):
    """Raised when ``||X - Tr{X rho} I||`` vanishes, so the shifted normalization is undefined."""

    pass


class BadParameterCountError(KdError, ValueError):
    """Raised when a chart parameter vector does not match the dimension."""

    pass


class NotQubitError(KdError, ValueError):
    """Raised when a qubit-only routine receives ``d != 2``."""

    pass


class UnknownSuiteError(KdError, LookupError):
    """Raised when a verification suite name is not registered."""

    pass


class SchemaError(KdError, ValueError):
    """Raised when an input file does not match the expected schema."""

    def __init__(self, message: str, diagnostics: Optional[List[str]] = None):
        self.diagnostics = diagnostics or []
        detail = "; ".join(self.diagnostics)
        super().__init__(f"{message}: {detail}" if detail else message)


class InvariantError(KdError, ValueError):
    """Raised when a value violates a domain invariant, e.g. ``trace = 0.98``."""

    def __init__(self, invariant: str, value: Optional[float] = None, detail: str = ""):
        self.invariant = invariant
        self.value = value
        message = invariant if value is None else f"{invariant} = {value:.12g}"
        super().__init__(f"{message} ({detail})" if detail else message)


class ReportIoError(KdError, OSError):
    """Raised when a report or instance file cannot be written or read."""

    pass
