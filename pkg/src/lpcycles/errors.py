"""Exception hierarchy shared by all modules."""


class LpCyclesError(ValueError):
    """Base class for input and precondition errors."""


class LoopEdge(LpCyclesError):
    pass


class IndexOutOfRange(LpCyclesError):
    pass


class EdgeCountTooLarge(LpCyclesError):
    pass


class TooManyEdges(LpCyclesError):
    pass


class NotPrime(LpCyclesError):
    pass


class NotOddPrime(LpCyclesError):
    pass


class OddExponent(LpCyclesError):
    pass


class PreconditionError(LpCyclesError):
    pass


class GraphFormatError(LpCyclesError):
    pass


class BudgetExceeded(RuntimeError):
    """A configured enumeration budget ran out before the search finished."""


class ConvergenceFailure(RuntimeError):
    pass


class NoConvergence(RuntimeError):
    pass


class InternalInconsistency(AssertionError):
    """Two independent computations of the same quantity disagree."""


class IdentityMismatch(AssertionError):
    pass
