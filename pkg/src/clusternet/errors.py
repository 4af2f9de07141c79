"""Exception types shared across the package."""


class ClusternetError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(ClusternetError, ValueError):
    """A model or experiment parameter is outside its allowed domain."""


class ValidationError(ClusternetError, ValueError):
    """An input object violates a structural invariant (shape, symmetry, ...)."""


class CapacityError(ClusternetError):
    """A request exceeds a hard size limit (e.g. brute-force word length)."""


class DegenerateSubtractionError(ClusternetError):
    """The state has no n-photon component in the subtraction mode.

    Raised when the normalisation of the conditional state is numerically
    indistinguishable from zero, e.g. when subtracting from vacuum.
    """


class DegenerateVarianceError(ClusternetError):
    """A photon-number variance is too small to normalise correlations."""


class InternalConsistencyError(ClusternetError):
    """A quantity violated an analytic bound beyond numerical tolerance."""
