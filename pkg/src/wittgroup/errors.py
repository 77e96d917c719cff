"""Exception types raised across the package."""


class WittGroupError(Exception):
    """Base class for all package errors."""


class NotPrime(WittGroupError, ValueError):
    pass


class UnsupportedSize(WittGroupError, ValueError):
    pass


class DivisionByZero(WittGroupError, ZeroDivisionError):
    pass


class DescriptorMismatch(WittGroupError, ValueError):
    pass


class NoEmbedding(WittGroupError, ValueError):
    pass


class NonUnitDeterminant(WittGroupError, ValueError):
    pass


class CapExceeded(WittGroupError, RuntimeError):
    """Group closure grew past the configured element cap."""


class NotClosed(WittGroupError, RuntimeError):
    pass


class NotInvariant(WittGroupError, ValueError):
    pass


class ClassificationFailure(WittGroupError, RuntimeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeExceeded(WittGroupError, RuntimeError):
    pass


class SectionInvalid(WittGroupError, ValueError):
    pass


class KernelNotAbelianP(WittGroupError, ValueError):
    pass


class NotEquivariant(WittGroupError, ValueError):
    pass


class ClassesDiffer(WittGroupError, ValueError):
    pass


class CocycleInvalid(WittGroupError, ValueError):
    pass


class ActionMismatch(WittGroupError, AssertionError):
    pass


class NotSurjective(WittGroupError, ValueError):
    pass


class KernelMismatch(WittGroupError, ValueError):
    pass


class HypothesisViolated(WittGroupError, ValueError):
    pass


class ResidualImageTooSmall(WittGroupError, ValueError):
    pass


class UnexpectedObstruction(WittGroupError, RuntimeError):
    pass


class SectionNotFound(WittGroupError, RuntimeError):
    pass


class NonIntegralCoefficient(WittGroupError, ValueError):
    pass


class ParseError(WittGroupError, ValueError):
    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.message = message
        self.position = position
