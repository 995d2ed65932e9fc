"""Exception types raised across the library."""


class PimsimError(Exception):
    """Base class for every library error."""


class DivisionByZero(PimsimError, ZeroDivisionError):
    pass


class FieldMismatch(PimsimError):
    pass


class UnsupportedField(PimsimError):
    pass


class UnsupportedCharacteristic(PimsimError):
    pass


class ZeroPolynomial(PimsimError):
    pass


class NoSolution(PimsimError):
    pass


class DimensionMismatch(PimsimError, ValueError):
    pass


class AmbientMismatch(DimensionMismatch):
    pass


class NonSquare(DimensionMismatch):
    pass


class BadParam(PimsimError, ValueError):
    pass


class ParseError(PimsimError, ValueError):
    pass


class NotTwoSided(PimsimError):
    pass


class ImproperIdeal(PimsimError):
    pass


class NotClosed(PimsimError):
    pass


class NoIdentity(PimsimError):
    pass


class NotInvariant(PimsimError):
    pass


class AlgebraMismatch(PimsimError):
    pass


class ZeroModule(PimsimError):
    pass


class IncompleteSimples(PimsimError):
    pass


class NotEndomorphism(PimsimError):
    pass


class NotCertifiedSimple(PimsimError):
    pass


class NotApproxIdempotent(PimsimError):
    pass


class SearchBudgetExceeded(PimsimError):
    """A randomized search ran out of candidates.

    ``partial`` carries whatever was computed before the budget ran out.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InternalInvariantViolation(PimsimError):
    pass


class StructureViolation(PimsimError):
    pass
