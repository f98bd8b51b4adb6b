"""Exception types raised across the package."""


class MetricGroupError(Exception):
    """Base class for all package errors."""


class TooLarge(MetricGroupError):
    """A configured enumeration or search bound was exceeded."""


class InvalidSubgroup(MetricGroupError):
    pass


class InvalidForm(MetricGroupError, ValueError):
    """Data does not define a well-defined quadratic form."""


class InvalidLattice(MetricGroupError, ValueError):
    pass


class DegenerateForm(MetricGroupError):
    pass


class NumericalInconsistency(MetricGroupError):
    """Floating-point evaluation disagreed with an exact expectation.

    This signals an implementation bug, not bad input.
    """


class NotIsotropic(MetricGroupError):
    pass


class NotCyclic(MetricGroupError):
    pass


class SignatureMismatch(MetricGroupError):
    pass


class RealizationNotFound(MetricGroupError):
    pass


class GroupMismatch(MetricGroupError):
    pass
