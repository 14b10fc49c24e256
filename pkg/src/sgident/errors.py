"""Shared exception types."""


class AlgebraError(Exception):
    """Base class for domain errors raised by this package."""


class InstanceMismatchError(AlgebraError):
    """Operands belong to different semiring instances."""


class UnsupportedStructureError(AlgebraError):
    """The operation needs structure the instance lacks (idempotency, interval)."""


class InternalConsistencyError(AlgebraError):
    """A fact the mathematics guarantees failed to verify; always a bug."""


class BudgetExceededError(AlgebraError):
    """An enumeration or search exceeded its configured budget."""


class ClosureCapExceeded(AlgebraError):
    """BFS closure hit the element cap. Carries the partial result."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
