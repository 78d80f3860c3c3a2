"""Exception types shared across the package."""

from __future__ import annotations


class RandstepError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(RandstepError, ValueError):
    """Matrix or vector shapes are incompatible with the operation."""


class ParameterError(RandstepError, ValueError):
    """A numeric parameter violates the operation's preconditions."""


class HypothesisError(ParameterError):
    """A theorem-level hypothesis is violated (e.g. spectrum in the wrong half-plane)."""


class CapabilityError(RandstepError, ValueError):
    """The problem definition lacks a field required by the operation (e.g. second derivative)."""


class RangeError(RandstepError, ValueError):
    """A query time lies outside the covered horizon of a path."""


class ConvergenceError(RandstepError, RuntimeError):
    """An iteration failed to converge within its cap.

    ``partial`` carries whatever result was computed before giving up.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class DivergenceError(RandstepError, ArithmeticError):
    """A simulated path left the finite range (node magnitude above the guard).

    Carries the jump index and time at which the guard tripped.
    """

    def __init__(self, message: str, jump_index: int | None = None, time: float | None = None):
        super().__init__(message)
        self.jump_index = jump_index
        self.time = time


class NumericConsistencyError(RandstepError, ArithmeticError):
    """An internal numeric self-check failed (e.g. imaginary residue above tolerance)."""


class FitError(RandstepError, ValueError):
    """Too few usable rows remain for a regression fit."""
