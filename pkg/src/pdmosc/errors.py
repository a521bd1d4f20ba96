"""Exception hierarchy shared by all modules.

The CLI maps ``DomainError`` (and subclasses) to exit status 2 and
``ConvergenceError`` to exit status 3.
"""


class DomainError(ValueError):
    """Input outside the domain where a formula or solver is defined."""


class UnsupportedError(DomainError):
    """Requested branch exists physically but has no implementation here."""


class DivergenceError(DomainError):
    """Quantity diverges at the requested argument (e.g. K(1))."""


class PoleError(DomainError):
    """Gamma function evaluated at a pole."""


class ConstraintError(DomainError):
    """Ordering parameters violate a closure condition."""


class NoBoundStateError(DomainError):
    """Requested level lies above the bound-state cutoff."""


class UnboundedStateError(DomainError):
    """State is not square integrable."""


class LevelUnreachableError(DomainError):
    """Quantization condition has no root in the admissible range."""


class DomainExitError(DomainError):
    """Integrated trajectory left the admissible domain.

    ``last_state`` holds (t, x, xdot) of the last admissible sample.
    """

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state


class ConvergenceError(RuntimeError):
    """Iterative solver failed to converge."""


class QuasiExactLimitError(ConvergenceError):
    """Bethe root equations could not be solved for the requested degree."""


class NoRealRootError(DomainError):
    """Bethe root equation has no real solution (negative discriminant)."""
