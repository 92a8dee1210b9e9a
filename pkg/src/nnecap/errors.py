"""Exception hierarchy shared by all modules."""


class NNECapError(Exception):
    """Base class for package errors."""


class ParameterError(NNECapError, ValueError):
    """Invalid or mismatched parameters."""


class UnsupportedRegimeError(ParameterError):
    """Request is well-posed, but no construction is provided for it."""


class CapacityError(NNECapError, RuntimeError):
    """A size or enumeration budget would be exceeded."""


class BudgetExceeded(CapacityError):
    """A search ran out of nodes before proving optimality.

    Carries the best solution found so far, which is still a valid lower bound.
    """

    def __init__(self, message, best_size=0, witness=(), nodes=0):
        super().__init__(message)
        self.best_size = best_size
        self.witness = tuple(witness)
        self.nodes = nodes


class CorruptInputError(NNECapError, ValueError):
    """Received data could not have come from this code over a NNE channel."""
