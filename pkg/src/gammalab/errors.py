"""Exception types shared across the package."""


class GammalabError(Exception):
    """Base class for all package errors."""


class NotPrime(GammalabError):
    pass


class TooLarge(GammalabError):
    pass


class DivideByZero(GammalabError):
    pass


class NotInSubfield(GammalabError):
    pass


class ZeroHasNoLog(GammalabError):
    pass


class Singular(GammalabError):
    pass


class ZeroScalar(GammalabError):
    pass


class NotRegular(GammalabError):
    pass


class OracleFailed(GammalabError):
    """An internal self-verification check did not pass."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"oracle failed: {check}" + (f" ({detail})" if detail else ""))


class DimensionMismatch(GammalabError):
    pass


class MalformedShalikaElement(GammalabError):
    pass


class ShalikaVectorPresent(GammalabError):
    """Raised when a plain functional-equation route is requested for a
    representation that carries a Shalika vector; use the level-zero
    modified equation instead."""


class NonConstantRatio(GammalabError):
    pass


class UnsupportedN(GammalabError):
    pass


class PreconditionViolated(GammalabError):
    pass


class DimensionBoundViolated(GammalabError):
    pass
