"""Exception types raised across the package."""


class FreePolesError(ValueError):
    """Base class for all domain errors raised by freepoles."""


# geometry
class NonMonotoneAngles(FreePolesError):
    pass


class ZeroModulus(FreePolesError):
    pass


class DegenerateTriple(FreePolesError):
    pass


class PoleAt(FreePolesError):
    pass


# radii
class PoleOutsideDomain(FreePolesError):
    pass


class InfinityNotInDomain(FreePolesError):
    pass


class ImageNotCanonical(FreePolesError):
    pass


class MismatchBeyondTolerance(ArithmeticError):
    """Two independent evaluation paths disagree; indicates a bug, not bad input."""


# functionals
class NonPositiveInput(FreePolesError):
    pass


class MissingOriginDomain(FreePolesError):
    pass


class MissingInfinityDomain(FreePolesError):
    pass


class DisjointnessViolated(FreePolesError):
    pass


class CoincidentPoles(FreePolesError):
    pass


# extremal problem
class DomainError(FreePolesError):
    pass


class BracketFailure(ArithmeticError):
    pass


class NonConvergence(RuntimeWarning):
    pass


# separating transformation
class OutsideSector(FreePolesError):
    pass


class ZeroInput(FreePolesError):
    pass


class OffRay(FreePolesError):
    pass


# quadratic differentials
class PoleEvaluation(FreePolesError):
    pass


class SeedAtSingularity(FreePolesError):
    pass


# harness
class RetryExhausted(RuntimeError):
    pass
