"Exceptions raised by the twisted Hurwitz engines"


class HurwitzError(ValueError):
    "Base class for every error raised on invalid Hurwitz data"


class InvalidPartitionError(HurwitzError):
    "A partition is not a weakly decreasing tuple of positive integers"


class InvalidDegreeError(HurwitzError):
    "The degree n must be a positive integer"


class OddDoubleFactorialError(HurwitzError):
    "The double factorial is only defined here for even arguments"


class NotTwistedSymmetricError(HurwitzError):
    "The permutation does not satisfy tau sigma tau = sigma^-1"


class CapExceededError(HurwitzError):
    "The input is too large for exhaustive enumeration"


class InvalidBranchCountError(HurwitzError):
    "No branch points; the number is undefined"


class OnWallError(HurwitzError):
    "The lattice point lies on a wall of the resonance arrangement"


class NotInChamberError(HurwitzError):
    "The lattice point does not belong to the requested chamber"


class ChamberEmptyError(HurwitzError):
    "Not enough lattice points were found in a chamber within the bound"


class NonAdjacentChambersError(HurwitzError):
    "Two chambers do not differ in exactly the sign of the crossed wall"


class NoWallError(HurwitzError):
    "The shape has no wall to cross"


class DegreeBoundViolation(HurwitzError):
    "An interpolant failed on a held-out node"


class QuotientGenusError(HurwitzError):
    "Symbolic edge weights need a quotient graph of genus zero"
