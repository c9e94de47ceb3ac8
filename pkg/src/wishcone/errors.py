"""Exception hierarchy shared by every module of the package."""


class WishconeError(ValueError):
    """Base class for all domain errors raised by wishcone."""


class NotAPartition(WishconeError):
    pass


class CellOutOfDiagram(WishconeError):
    pass


class NonPositiveAlpha(WishconeError):
    pass


class LengthExceedsVars(WishconeError):
    pass


class DimensionMismatch(WishconeError):
    pass


class InsufficientVars(WishconeError):
    pass


class InvalidSize(WishconeError):
    pass


class NegativeShape(WishconeError):
    pass


class NotNested(WishconeError):
    pass


class SingularSystem(WishconeError):
    """Raised when a linear system that must be triangular-invertible is not.

    This indicates an internal bug rather than bad input.
    """


class InvalidParams(WishconeError):
    pass


class NotPositiveDefinite(InvalidParams):
    pass


class OutOfDomain(WishconeError):
    pass


class NonPositiveT(WishconeError):
    pass


class NonHalfInteger(WishconeError):
    pass


class RankExceedsDegrees(WishconeError):
    pass


class DegreeTooHigh(WishconeError):
    pass
