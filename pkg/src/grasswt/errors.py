"""Exception types raised across the package."""


class GrassError(Exception):
    """Base class for all package errors."""


# finite fields
class NonPrimeCharacteristic(GrassError, ValueError):
    pass


class DegreeZero(GrassError, ValueError):
    pass


class FieldTooLarge(GrassError, ValueError):
    pass


class MixedFields(GrassError, TypeError):
    pass


class DivisionByZero(GrassError, ZeroDivisionError):
    pass


# exterior algebra
class DegreeOverflow(GrassError, ValueError):
    pass


class AmbientMismatch(GrassError, ValueError):
    pass


class ZeroVector(GrassError, ValueError):
    pass


class NotDecomposable(GrassError, ValueError):
    pass


class AmbientTooSmall(GrassError, ValueError):
    pass


class WrongDegree(GrassError, ValueError):
    pass


# decomposable subspaces
class NotDecomposableBasis(GrassError, ValueError):
    pass


class DependentInput(GrassError, ValueError):
    pass


class RankOverflow(GrassError, ValueError):
    pass


# codes and searches
class DependentBasis(GrassError, ValueError):
    pass


class InvalidDelta(GrassError, ValueError):
    pass


class NotInCode(GrassError, ValueError):
    pass


class BudgetExceeded(GrassError, RuntimeError):
    """A configured enumeration cap would be exceeded."""

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass
