"""Exception hierarchy shared by all qutritgate modules."""


class QutritGateError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimensionError(QutritGateError, ValueError):
    pass


class RangeError(QutritGateError, IndexError):
    pass


class ShapeError(QutritGateError, ValueError):
    pass


class GateKindError(QutritGateError, ValueError):
    """A gate was asked to act on a site of the wrong kind (e.g. not a qutrit)."""


class ArgumentError(QutritGateError, ValueError):
    pass


class UnsupportedSizeError(QutritGateError, ValueError):
    pass


class ResourceError(QutritGateError, MemoryError):
    pass


class NormalizationError(QutritGateError, ValueError):
    pass


class SingularDetuningError(QutritGateError, ZeroDivisionError):
    pass


class AsymmetricDriveError(QutritGateError, ValueError):
    pass


class DegenerateScheduleError(QutritGateError, ValueError):
    pass


class UnreachablePhaseError(QutritGateError, ValueError):
    pass


class IntegrationError(QutritGateError, RuntimeError):
    """Time stepping failed to converge within the allowed refinements."""


class RegimeWarning(UserWarning):
    """Parameters sit outside the dispersive regime assumed by an effective model."""
