"""Exception types shared across the package."""


class CausalApproxError(Exception):
    """Base class for domain errors raised by this package."""


class InsufficientDataError(CausalApproxError):
    """Raised when a sample is too small for the requested operation."""


class UnsupportedModelError(CausalApproxError):
    """Raised for (variant, range-size) combinations the catalog does not cover."""


class InfeasibleConstraintsError(CausalApproxError):
    """Raised when the marginal constraints admit no joint distribution.

    With renormalized inputs this cannot happen for the supported model
    families; seeing it signals corrupted constraint data.
    """


class SolverFailureError(CausalApproxError):
    """Raised when the linear-program solver breaks down numerically."""


class NoMonotoneModelError(CausalApproxError):
    """Raised when neither monotone model variant places mass on the data."""
