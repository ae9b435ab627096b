"""Exception hierarchy shared by all modules."""


class QEError(Exception):
    """Base class for every error raised by :mod:`qeigen`."""


class ParameterError(QEError, ValueError):
    """An argument violates a documented constraint."""


class UsageError(QEError, ValueError):
    """Arguments are individually valid but do not fit the requested operation."""


class CapacityError(QEError):
    """The problem is too large for the chosen backend."""


class NumericalError(QEError, ArithmeticError):
    """An iterative numerical routine failed to converge."""


class SamplerError(QEError):
    """Base class for sampler backend failures."""


class RetryableSamplerError(SamplerError):
    """Transport-level failure; the same request may succeed later."""


class SamplerProtocolError(SamplerError):
    """The backend answered, but the answer breaks the wire contract."""
