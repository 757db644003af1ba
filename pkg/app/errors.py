"""Error hierarchy shared by the solver modules.

InputError subclasses map to CLI exit code 2, ComputationError subclasses
to exit code 3.
"""

from typing import Any


class SolverError(Exception):
    """Base class for every error raised by the solver."""

    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable diagnostic."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            **self.details,
        }


class InputError(SolverError):
    """Invalid game description, matrix or precondition."""

    exit_code = 2


class ComputationError(SolverError):
    """Solver failure on valid input (caps, numerics, non-termination)."""

    exit_code = 3


# --- Input errors ---

class MissingKey(InputError):
    pass


class UnknownIdentifier(InputError):
    pass


class DuplicateKey(InputError):
    pass


class ProbabilityRowInvalid(InputError):
    pass


class EmptyActionSet(InputError):
    pass


class NotStochastic(InputError):
    pass


class NotDeterministic(InputError):
    pass


class NotInFamily(InputError):
    pass


class InvalidSlice(InputError):
    pass


class InvalidMatrix(InputError):
    pass


class NotStructurallySolvable(InputError):
    pass


# --- Computation errors ---

class StateCapExceeded(ComputationError):
    pass


class EnumerationCapExceeded(ComputationError):
    pass


class CircuitCapExceeded(ComputationError):
    pass


class SingularSystem(ComputationError):
    pass


class IterationBudgetExceeded(ComputationError):
    """Iteration budget exhausted; carries the best iterate and its residual."""

    def __init__(self, message: str, best: Any = None, residual: float | None = None, **details: Any):
        super().__init__(message, residual=residual, **details)
        self.best = best
        self.residual = residual


class CycleDetected(ComputationError):
    pass


class MaxOuterIterationsExceeded(ComputationError):
    pass


class NoCircuit(ComputationError):
    pass


class NoEigenpair(ComputationError):
    pass
