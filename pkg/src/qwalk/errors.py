"""Exception types raised by the simulation library."""


class QWalkError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(QWalkError, ValueError):
    """An argument violates a documented precondition."""


class CapacityExceededError(QWalkError):
    """The requested evolution does not fit the lattice it runs on."""


class NumericalFailureError(QWalkError, ArithmeticError):
    """A numerical invariant broke, which points at an upstream bug."""
