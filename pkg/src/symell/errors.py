"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SymellError(Exception):
    """Base class for every error raised by this package."""


class RootFindingError(SymellError, ArithmeticError):
    """The simultaneous iteration did not reach the residual bound."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(f"{message} (best residual {best_residual:.3e})")
        self.best_residual = best_residual


class DomainError(SymellError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class PoleError(DomainError):
    """A denominator vanished; the input was outside the closed domain."""


class ValidationError(SymellError, ValueError):
    """A constructed object failed a numerical invariant check."""

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
        self.residual = residual


class ConstructionError(SymellError, ValueError):
    """Parameters do not describe an admissible object."""


class SearchBudgetExceeded(SymellError):
    """An exhaustive search would exceed its configured budget."""


class EquivarianceError(SymellError):
    """A ball automorphism does not descend to symmetrized coordinates."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BracketError(SymellError, ArithmeticError):
    """Exponential bracketing could not enclose the gauge value."""


class DegenerateTargetError(SymellError, ValueError):
    """The target point is not generic (colliding roots); retry elsewhere."""


class ConsistencyError(SymellError, AssertionError):
    """An internally computed preimage failed forward verification."""
