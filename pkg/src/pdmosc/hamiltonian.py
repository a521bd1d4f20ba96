"""Ordered kinetic operators for m(x) = 1/(1 + k x^2)^2 and ODE residuals.

The ordered kinetic term (1/2) m^a p m^b p m^g (a + b + g = -1), averaged over
the ordering family, is written through the means (a_bar, g_bar, ag_bar):

non-Hermitian:
    T f = -(hbar^2 / 2m) [f'' + (g - a - 1)(m'/m) f'
                          + (g m''/m - (ag + 2g)(m'/m)^2) f]
Hermitian (conjugated by m^eta, 2 eta = g - a):
    T f = -(hbar^2/2) ((1/m) f')' + (hbar^2/2) [((a + g)/2) (1/m)''
                          + (ag + (g - a)^2/4) ((1/m)')^2 m] f

In 3D the reduced radial function chi = r R obeys the same operators plus the
angular term hbar^2 l(l+1) (1 + k r^2) / (2 r^2).
"""

import numpy as np

from .params import Potential

# 7-point central differences, error O(h^6)
_D1 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_D2 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
_OFFS = np.arange(-3, 4)


def derivatives(func, x, h):
    """Value, first and second derivative of ``func`` by 7-point stencils."""
    x = np.asarray(x, dtype=float)
    samples = np.stack([func(x + o * h) for o in _OFFS])
    f = samples[3]
    fp = np.tensordot(_D1, samples, axes=1) / h
    fpp = np.tensordot(_D2, samples, axes=1) / (h * h)
    return f, fp, fpp


def potential(x, params, u=None):
    x = np.asarray(x, dtype=float)
    if params.potential is Potential.HIGGS:
        return 0.5 * params.omega0**2 * x * x
    if u is None:
        u = 1.0 + params.k * x * x
    return 0.5 * params.omega0**2 * x * x / (u * u)


def mass_log_derivatives(x, k, u=None):
    """Return (u, m'/m, m''/m) for m = u^-2, u = 1 + k x^2.

    ``u`` may be supplied when it is known more accurately than 1 + k x^2.
    """
    if u is None:
        u = 1.0 + k * x * x
    return u, -4.0 * k * x / u, 24.0 * k * k * x * x / (u * u) - 4.0 * k / u


def hermitian_q(x, op, k, u=None):
    """Multiplicative term Q of the Hermitian equation, i.e. the bracket
    ((a + g)/2) m''/m - (ag + a + g + (g - a)^2/4) (m'/m)^2."""
    _, d1, d2 = mass_log_derivatives(x, k, u)
    return 0.5 * (op.alpha_bar + op.gamma_bar) * d2 - op.mixed * d1 * d1


def apply_hermitian(f, fp, fpp, x, op, params, l=None):
    """H f for the Hermitian ordering (1D, or reduced radial when ``l`` is given)."""
    k, hb2 = params.k, params.hbar**2
    u = 1.0 + k * x * x
    p, dp = u * u, 4.0 * k * x * u
    kin = -0.5 * hb2 * (p * fpp + dp * fp + hermitian_q(x, op, k) * p * f)
    out = kin + potential(x, params) * f
    if l is not None:
        out = out + 0.5 * hb2 * l * (l + 1) * u / (x * x) * f
    return out


def apply_nonhermitian(f, fp, fpp, x, op, params, l=None):
    """H f for the non-Hermitian ordering (1D, or reduced radial when ``l`` is given)."""
    k, hb2 = params.k, params.hbar**2
    a, g, ag = op.alpha_bar, op.gamma_bar, op.alphagamma_bar
    u, d1, d2 = mass_log_derivatives(x, k)
    bracket = fpp + (g - a - 1.0) * d1 * fp + (g * d2 - (ag + 2.0 * g) * d1 * d1) * f
    out = -0.5 * hb2 * u * u * bracket + potential(x, params) * f
    if l is not None:
        out = out + 0.5 * hb2 * l * (l + 1) * u / (x * x) * f
    return out


def schrodinger_residual(func, energy, op, params, x, hermitian=True, l=None, h=None):
    """Pointwise (H - E) f and a scale max|E f| + max|V f| for relative measures."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 2e-3 * max(1.0, float(np.max(np.abs(x))))
    f, fp, fpp = derivatives(func, x, h)
    apply = apply_hermitian if hermitian else apply_nonhermitian
    res = apply(f, fp, fpp, x, op, params, l) - energy * f
    scale = np.max(np.abs(energy * f)) + np.max(np.abs(potential(x, params) * f))
    return res, scale
