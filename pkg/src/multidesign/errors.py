"""Exception hierarchy shared by all modules."""


class MultiDesignError(Exception):
    """Base class for every error raised by this package."""


class NonHermitianInput(MultiDesignError, ValueError):
    pass


class DimensionMismatch(MultiDesignError, ValueError):
    pass


class InvalidWeights(MultiDesignError, ValueError):
    pass


class InvalidProblem(MultiDesignError, ValueError):
    pass


class MajorizationViolated(MultiDesignError, ValueError):
    pass


class DegenerateVector(MultiDesignError, ArithmeticError):
    pass


class InternalContradiction(MultiDesignError, RuntimeError):
    """A guaranteed mathematical property failed to hold; indicates a bug."""


class ConvergenceError(MultiDesignError, RuntimeError):
    pass


class ProblemFormatError(MultiDesignError, ValueError):
    """A problem file is syntactically or structurally malformed."""
