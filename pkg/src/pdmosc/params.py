"""Parameter containers shared by the classical and quantum modules."""

import math
from dataclasses import dataclass, asdict
from enum import Enum

from .errors import DomainError


class Potential(str, Enum):
    HIGGS = "higgs"
    NONPOLYNOMIAL = "v2"


@dataclass(frozen=True)
class SystemParams:
    """Curvature ``k``, frequency ``omega0``, Planck constant ``hbar``.

    The mass function is m(x) = 1/(1 + k x^2)^2 for both potentials:
    V1 = omega0^2 x^2 / 2 (Higgs) and V2 = omega0^2 x^2 / (2 (1 + k x^2)^2).
    """

    k: float = 0.0
    omega0: float = 1.0
    hbar: float = 1.0
    potential: Potential = Potential.HIGGS

    def __post_init__(self):
        for name in ("k", "omega0", "hbar"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite")
        if self.omega0 <= 0 or self.hbar <= 0:
            raise DomainError("omega0 and hbar must be positive")
        object.__setattr__(self, "potential", Potential(self.potential))

    @property
    def mu(self):
        """omega0 / (hbar k); signed, infinite at k = 0."""
        if self.k == 0:
            return math.inf
        return self.omega0 / (self.hbar * self.k)

    def with_potential(self, potential):
        return SystemParams(self.k, self.omega0, self.hbar, Potential(potential))

    def to_dict(self):
        d = asdict(self)
        d["potential"] = self.potential.value
        return d


@dataclass(frozen=True)
class OrderingParameters:
    """Weighted means of the ordering exponents of m^a p m^b p m^g.

    ``alphagamma_bar`` is the mean of the products a*g, which in general
    differs from ``alpha_bar * gamma_bar``.
    """

    alpha_bar: float = 0.0
    gamma_bar: float = 0.0
    alphagamma_bar: float = 0.0

    @property
    def beta_bar(self):
        return -1.0 - self.alpha_bar - self.gamma_bar

    @property
    def mixed(self):
        """ag + a + g + (g - a)^2 / 4, the coefficient of (m'/m)^2."""
        a, g = self.alpha_bar, self.gamma_bar
        return self.alphagamma_bar + a + g + 0.25 * (g - a) ** 2

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class OrderingCoefficients:
    eta1: float
    eta2: float
    sigma1: float
    sigma2: float
    mu: float
    mu_tilde: float


def ordering_coefficients(op, params):
    """Hermitian (eta) and non-Hermitian (sigma) coefficients plus mu, mu_tilde.

    ``mu_tilde`` is sqrt(mu^2 - 2 eta1 + 9/4); infinite when k = 0.
    """
    a, g = op.alpha_bar, op.gamma_bar
    eta1 = 5.0 * (a + g) - 8.0 * op.mixed
    eta2 = -3.0 * (a + g) + 4.0 * op.mixed
    sigma1 = -4.0 * op.alphagamma_bar - 3.0 * g
    sigma2 = 4.0 * op.alphagamma_bar + 2.0 * g
    mu = params.mu
    if math.isinf(mu):
        mu_tilde = math.inf
    else:
        rad = mu * mu - 2.0 * eta1 + 2.25
        if rad < 0:
            raise DomainError(
                f"ordering makes mu_tilde imaginary (mu^2 - 2 eta1 + 9/4 = {rad:.6g})")
        mu_tilde = math.sqrt(rad)
    return OrderingCoefficients(eta1, eta2, sigma1, sigma2, mu, mu_tilde)


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    l: float
    energy: float
    kind: str = "bound"
    method: str = "exact"

    def to_dict(self):
        return asdict(self)
