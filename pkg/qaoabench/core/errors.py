"""Exception hierarchy for QaoaBench."""


class QaoaBenchError(Exception):
    """Base class for library errors."""

    pass


class InvalidArgumentError(QaoaBenchError, ValueError):
    """An argument violates a documented precondition."""

    pass


class CapacityError(QaoaBenchError):
    """A problem is too large for exhaustive enumeration or dense emulation."""

    pass


class OptimizationError(QaoaBenchError):
    """An optimizer received a non-finite value and aborted the run."""

    pass
