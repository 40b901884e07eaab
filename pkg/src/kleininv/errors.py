"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class KleinError(Exception):
    """Base class for every error raised by this package."""


class MixedFields(KleinError):
    pass


class DivisionByZero(KleinError, ZeroDivisionError):
    pass


class PoleAtValue(KleinError):
    pass


class MixedAmbient(KleinError):
    pass


class ZeroPolynomial(KleinError):
    pass


class NotDivisible(KleinError):
    """Raised by exact division; ``witness`` is the first offending monomial."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotMonicInVariable(KleinError):
    pass


class ParseError(KleinError, ValueError):
    """Malformed text; ``position`` is the 0-based column of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at column {position}")
        self.position = position


class IndexOutOfRange(KleinError, IndexError):
    pass


class UnknownName(KleinError, KeyError):
    pass


class UnknownIdentity(KleinError, KeyError):
    pass


class UnknownLemma(KleinError, KeyError):
    pass


class NonHomogeneousMix(KleinError):
    pass


class NotInvariant(KleinError):
    pass


class DegreeBoundExceeded(KleinError):
    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (degree bound {bound})")
        self.bound = bound


class IterationBudgetExceeded(KleinError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class BudgetExceeded(KleinError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
