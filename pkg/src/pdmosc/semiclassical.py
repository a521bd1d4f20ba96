"""Bohr-Sommerfeld quantization, loop integral of p dx = 2 pi hbar (n + 1/2)."""

import math
from dataclasses import dataclass, asdict

import numpy as np
from scipy.optimize import brentq

from .classical import v2_period, v2_trajectory
from .errors import DomainError, LevelUnreachableError
from .params import Potential
from .specfn import complete_elliptic

_M_EPS = 1e-12


@dataclass(frozen=True)
class SemiclassicalLevel:
    n: int
    l: int
    energy: float
    amplitude_or_modulus: float

    def to_dict(self):
        return asdict(self)


def higgs_semiclassical_energy(n, params):
    """E_n = (n + 1/2) hbar omega0 + (n + 1/2)^2 hbar^2 k / 2."""
    if n < 0:
        raise DomainError("n must be non-negative")
    v = n + 0.5
    return v * params.hbar * params.omega0 + v * v * params.hbar**2 * params.k / 2.0


def higgs3d_semiclassical_energy(n_r, l, params):
    """E = N hbar omega0 + N^2 hbar^2 k / 2 with N = 2 n_r + l + 3/2."""
    if n_r < 0 or l < 0:
        raise DomainError("quantum numbers must be non-negative")
    v = 2 * n_r + l + 1.5
    return v * params.hbar * params.omega0 + v * v * params.hbar**2 * params.k / 2.0


@dataclass(frozen=True)
class V2Action:
    """Loop action of the V2 orbit with modulus m = k A^2.

    ``quadrature`` is the loop integral itself and is authoritative;
    ``closed_form`` is (omega0/2k)[E(m)/(1 + m) - K(m)] with parameter m,
    retained for comparison only.
    """

    m: float
    quadrature: float
    closed_form: float

    @property
    def discrepancy(self):
        return self.closed_form - self.quadrature


def _v2_loop_integral(A, params, tol=1e-14):
    # p = xdot / u^2, so p dx = xdot^2 / u^2 dt; periodic integrand, trapezoid converges geometrically
    T = v2_period(A, params)
    prev = None
    npts = 256
    while npts <= 1 << 20:
        t = np.arange(npts) * (T / npts)
        x, xdot = v2_trajectory(A, params, t)
        u = 1.0 + params.k * x * x
        val = float(np.sum(xdot**2 / u**2) * (T / npts))
        if prev is not None and abs(val - prev) <= tol * abs(val):
            return val
        prev = val
        npts *= 2
    return prev


def v2_action(m, params):
    """Action of the closed V2 orbit with modulus m = k A^2, 0 < m < 1, k > 0."""
    if not 0.0 < m < 1.0:
        raise DomainError(f"modulus m={m} outside (0, 1)")
    if params.k <= 0:
        raise DomainError("closed elliptic orbits require k > 0")
    p = params.with_potential(Potential.NONPOLYNOMIAL)
    A = math.sqrt(m / params.k)
    quad = _v2_loop_integral(A, p)
    K, E = complete_elliptic(m)
    closed = params.omega0 / (2.0 * params.k) * (E / (1.0 + m) - K)
    return V2Action(m, quad, closed)


def v2_energy_from_modulus(m, params):
    """Mechanical energy omega0^2 A^2 / (2 (1 + k A^2)^2) of the orbit with modulus m."""
    A2 = m / params.k
    return params.omega0**2 * A2 / (2.0 * (1.0 + m) ** 2)


def v2_semiclassical_spectrum(n_max, params):
    """Levels n = 0..n_max of the V2 oscillator (k > 0) from the loop-integral action.

    The action grows monotonically from 0 to omega0/k at the separatrix m = 1,
    so only levels with 2 pi hbar (n + 1/2) < omega0/k exist.
    """
    if params.k <= 0:
        raise DomainError("semiclassical V2 spectrum implemented for k > 0")
    h = 2.0 * math.pi * params.hbar
    lo, hi = _M_EPS, 1.0 - _M_EPS

    def residual(m, n):
        return v2_action(m, params).quadrature - h * (n + 0.5)

    levels = []
    for n in range(n_max + 1):
        r_hi = residual(hi, n)
        if r_hi < 0:
            raise LevelUnreachableError(
                f"level n={n} lies above the barrier top (max action {r_hi + h * (n + 0.5):.6g})")
        m = brentq(residual, lo, hi, args=(n,), xtol=1e-15, rtol=1e-15, maxiter=200)
        levels.append(SemiclassicalLevel(n, 0, v2_energy_from_modulus(m, params), m))
    return levels
