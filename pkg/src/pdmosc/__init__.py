"""Classical, semiclassical and quantum solvers for position-dependent-mass
oscillators with m(x) = 1/(1 + k x^2)^2: the Higgs oscillator and the
nonpolynomial potential omega0^2 x^2 / (2 (1 + k x^2)^2)."""

from .errors import ConvergenceError, DomainError
from .params import (OrderingParameters, Potential, SpectrumEntry, SystemParams,
                     ordering_coefficients)

__all__ = ["ConvergenceError", "DomainError", "OrderingParameters", "Potential",
           "SpectrumEntry", "SystemParams", "ordering_coefficients"]
__version__ = "0.1.0"
