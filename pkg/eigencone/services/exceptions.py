"""
Errors raised by the tropical services.

The management command turns every ``TropicalError`` into an input error
(exit status 1) named after the class.
"""


class TropicalError(Exception):
    """Base class for all service errors"""
    pass


class DimensionMismatch(TropicalError):
    """Operands have non-conformal shapes"""
    pass


class InvalidEntry(TropicalError):
    """A matrix or vector entry is negative, NaN or infinite where that is not allowed"""
    pass


class PreconditionViolated(TropicalError):
    """An operation was called outside its stated preconditions"""
    pass


class Divergent(TropicalError):
    """Kleene plus requested for a matrix with a cycle mean above 1"""
    pass


class NotStronglyConnected(TropicalError):
    pass


class NotAnEigenvalue(TropicalError):
    pass


class NotAnEigenvector(TropicalError):
    pass


class NoPositiveSubeigenvector(TropicalError):
    """No strict visualization exists (the matrix has no cycles)"""
    pass


class StrictnessFailed(TropicalError):
    """A computed visualization is not strict; indicates numeric trouble"""
    pass


class Unsolvable(TropicalError):
    pass


class CoveringLimitExceeded(TropicalError):
    pass


class IterationLimit(TropicalError):
    """Alternating projections did not settle within the cycle budget"""
    pass


class SurrogateUnstable(TropicalError):
    """The decision for an unbounded box changed with the surrogate upper value"""
    pass


class UpperOpenUnsupported(TropicalError):
    pass


class InvalidBox(TropicalError):
    pass


class NotSolvableInBox(TropicalError):
    pass


class NotAnEigenvectorInBox(TropicalError):
    pass


class EmptyEigenconeInBox(TropicalError):
    """The eigencone does not meet the box, so simplicity questions are vacuous"""
    pass


class NotLowerOpen(TropicalError):
    pass


class SizeCutoff(TropicalError):
    """Brute-force validator called on an instance above its size limit"""
    pass


class ProblemFileError(TropicalError):
    """Problem file is unreadable or fails schema validation"""
    pass
