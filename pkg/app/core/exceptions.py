"""Error hierarchy shared by the services, the CLI and the HTTP layer

Every error carries the process exit code the CLI uses for it.
"""


class SpectraError(Exception):
    """Base class for all domain errors"""
    exit_code = 1


class ParseError(SpectraError):
    """Malformed digraph text or family specifier"""
    exit_code = 2


class PreconditionError(SpectraError, ValueError):
    """An operation was called outside its domain"""
    exit_code = 3


class InvalidDigraphError(PreconditionError):
    """Loops, duplicate arcs or out-of-range vertices"""


class InvalidOrderError(PreconditionError):
    """Order argument below the minimum an operation accepts"""


class InvalidParamsError(PreconditionError):
    """θ/∞ parameters violating their invariants"""


class InvalidExponentsError(PreconditionError):
    """Trinomial exponents outside 0 ≤ a ≤ b < n, n ≥ a+b+1"""


class NotStronglyConnectedError(PreconditionError):
    """Digraph is not strongly connected (adjacency matrix reducible)"""


class AcyclicDigraphError(PreconditionError):
    """Digraph has no directed cycle"""


class CapExceededError(SpectraError):
    """Order above a configured cap for an exponential algorithm"""
    exit_code = 4


class VerificationFailedError(SpectraError):
    """At least one verification instance failed"""
    exit_code = 5


class UnresolvedComparisonError(SpectraError):
    """Two Perron roots could not be separated nor proven equal"""
    exit_code = 6


class ConvergenceError(SpectraError):
    """Power iteration hit its iteration limit"""
    exit_code = 7
