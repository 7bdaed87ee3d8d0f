"""Exception hierarchy shared by all modules."""


class LandauToeplitzError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(LandauToeplitzError, ValueError):
    pass


class CapacityExceeded(LandauToeplitzError, ValueError):
    pass


class DomainError(LandauToeplitzError, ValueError):
    pass


class IndexOutOfRange(LandauToeplitzError, IndexError):
    pass


class NotOnSphere(LandauToeplitzError, ValueError):
    pass


class InvalidEpsilon(LandauToeplitzError, ValueError):
    pass


class NotFredholm(LandauToeplitzError):
    """The boundary symbol fails to be invertible somewhere on the sphere."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotStabilized(LandauToeplitzError):
    """Kernel/cokernel counts did not settle; the report is still attached."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotUnitarySymbol(LandauToeplitzError, ValueError):
    pass


class NotConverged(LandauToeplitzError):
    pass


class NotInvertibleOnCircle(LandauToeplitzError, ValueError):
    pass


class QuadratureNotConverged(NotConverged):
    pass


class MismatchExceedsTolerance(LandauToeplitzError):
    pass


class SymbolParseError(LandauToeplitzError, ValueError):
    pass
