"""Exact quantum spectra and eigenfunctions of the general-ordered Higgs oscillator.

With x = tan(th)/sqrt(k) (k > 0) or x = tanh(s)/sqrt(|k|) (k < 0) the Hermitian
equation becomes a Poschl-Teller problem of strength lambda(lambda - 1) with
lambda = 1/2 + mu_tilde, mu_tilde = sqrt(mu^2 - 2 eta1 + 9/4).  The spectra are

    E_n = nu hbar^2 |k| mu_tilde +/- (hbar^2 |k| / 2) [nu^2 + 5/4 + 2(a + g)],

with nu = n + 1/2 in 1D and nu = 2 n_r + l + 3/2 for the 3D radial problem
(upper sign k > 0, lower sign k < 0).  For k < 0 only levels with
nu < mu_tilde are bound; the continuum starts at (hbar^2 |k|/2)(1 + 4 eta2 + mu^2).
"""

import math

import numpy as np
from scipy.special import lpmv

from .errors import DomainError, NoBoundStateError, UnsupportedError
from .params import OrderingParameters, SpectrumEntry, ordering_coefficients
from .specfn import hyp2f1_terminating, jacobi_polynomial, log_gamma


def _coeffs(op, params):
    return ordering_coefficients(op, params)


def _check_level(n):
    if n < 0 or int(n) != n:
        raise DomainError("quantum numbers must be non-negative integers")


def _energy(nu, op, params):
    """Shared 1D/3D formula written without mu so that k = 0 is regular."""
    k, hb, w0 = params.k, params.hbar, params.omega0
    c = _coeffs(op, params)
    root = math.sqrt(w0 * w0 + hb * hb * k * k * (2.25 - 2.0 * c.eta1))
    quad = nu * nu + 1.25 + 2.0 * (op.alpha_bar + op.gamma_bar)
    sign = 1.0 if k >= 0 else -1.0
    return nu * hb * root + sign * quad * hb * hb * abs(k) / 2.0


def bound_state_count_1d(op, params):
    """Number of 1D bound states for k < 0 (levels with n + 1/2 < mu_tilde); None if k >= 0."""
    if params.k >= 0:
        return None
    mt = _coeffs(op, params).mu_tilde
    return max(0, math.ceil(mt - 0.5))


def continuum_threshold(op, params):
    """Continuum onset (hbar^2 |k| / 2)(1 + 4 eta2 + mu^2), k < 0."""
    if params.k >= 0:
        raise UnsupportedError("continuum exists only for k < 0")
    c = _coeffs(op, params)
    return params.hbar**2 * abs(params.k) / 2.0 * (1.0 + 4.0 * c.eta2 + c.mu**2)


def higgs1d_continuum_energy(rho, op, params):
    """E_rho = [(rho^2 + mu^2 + 1)/2 + 2 eta2] hbar^2 |k| for k < 0."""
    if params.k >= 0:
        raise UnsupportedError("continuum exists only for k < 0")
    c = _coeffs(op, params)
    return ((rho * rho + c.mu**2 + 1.0) / 2.0 + 2.0 * c.eta2) * params.hbar**2 * abs(params.k)


def higgs1d_energy(n, op, params):
    """Energy of the n-th 1D level; raises NoBoundStateError above the k < 0 cutoff."""
    _check_level(n)
    if params.k < 0 and n >= bound_state_count_1d(op, params):
        raise NoBoundStateError(
            f"n={n} exceeds the bound-state cutoff n < mu_tilde - 1/2 "
            f"= {_coeffs(op, params).mu_tilde - 0.5:.6g}")
    return _energy(n + 0.5, op, params)


def higgs1d_spectrum(n_max, op, params):
    """Bound levels 0..n_max (truncated at the cutoff for k < 0)."""
    count = bound_state_count_1d(op, params)
    top = n_max if count is None else min(n_max, count - 1)
    return [SpectrumEntry(n, 0, higgs1d_energy(n, op, params), "bound", "exact")
            for n in range(top + 1)]


def _pochhammer_poly(n, b, c, w):
    return np.asarray(hyp2f1_terminating(-n, b, c, w))


def higgs1d_wavefunction(n, op, params, x):
    """Normalized 1D eigenfunction psi_n(x).

    k > 0: C u^(-3/4) P^(-mt)_(n+mt)(sqrt(k) x / sqrt(u)),
           C^2 = sqrt(k)(2n + 2mt + 1) Gamma(n + 2mt + 1) / (2 n!).
    k < 0: C u^(-1/2) P^(-q)_(mt-1/2)(sqrt(|k|) x), q = mt - 1/2 - n,
           C^2 = sqrt(|k|) q Gamma(2mt - n) / n!.
    The Ferrers functions are expanded into their terminating 2F1 forms and
    the gamma factors combined in log space so that large mt is safe.
    """
    _check_level(n)
    k = params.k
    x = np.asarray(x, dtype=float)
    if k == 0:
        return _harmonic_wavefunction(n, params, x)
    mt = _coeffs(op, params).mu_tilde
    sk = math.sqrt(abs(k))
    if k > 0:
        u = 1.0 + k * x * x
        y = sk * x / np.sqrt(u)
        logc = 0.5 * (0.5 * math.log(k) + math.log(2 * n + 2 * mt + 1)
                      + log_gamma(n + 2 * mt + 1) - math.log(2.0) - log_gamma(n + 1))
        logc += -mt * math.log(2.0) - log_gamma(1.0 + mt)
        poly = _pochhammer_poly(n, n + 2 * mt + 1, 1.0 + mt, 0.5 * (1.0 - y))
        return math.exp(logc) * u ** (-0.75 - 0.5 * mt) * poly
    count = bound_state_count_1d(op, params)
    if n >= count:
        raise NoBoundStateError(f"n={n} exceeds the bound-state cutoff")
    if np.any(np.abs(x) >= 1.0 / sk):
        raise DomainError("k < 0 eigenfunctions live on |x| < 1/sqrt(|k|)")
    q = mt - 0.5 - n
    u = 1.0 - abs(k) * x * x
    t = sk * x
    logc = 0.5 * (0.5 * math.log(abs(k)) + math.log(q) + log_gamma(2 * mt - n) - log_gamma(n + 1))
    logc += -q * math.log(2.0) - log_gamma(1.0 + q)
    poly = _pochhammer_poly(n, 2 * mt - n, 1.0 + q, 0.5 * (1.0 - t))
    return math.exp(logc) * u ** (0.5 * (q - 1.0)) * poly


def _harmonic_wavefunction(n, params, x):
    from scipy.special import eval_hermite

    a = params.omega0 / params.hbar
    xi = math.sqrt(a) * x
    norm = (a / math.pi) ** 0.25 / math.sqrt(2.0**n * math.factorial(n))
    return norm * eval_hermite(n, xi) * np.exp(-0.5 * xi * xi)


def higgs3d_bound(n_r, l, op, params):
    """True when (n_r, l) is bound (always for k >= 0)."""
    if params.k >= 0:
        return True
    return 2 * n_r + l + 1.5 < _coeffs(op, params).mu_tilde


def higgs3d_energy(n_r, l, op, params):
    """E = N hbar^2 |k| mt +/- (hbar^2 |k|/2)(N^2 + 5/4 + 2(a + g)), N = 2 n_r + l + 3/2."""
    _check_level(n_r)
    _check_level(l)
    if not higgs3d_bound(n_r, l, op, params):
        raise NoBoundStateError(f"(n_r, l)=({n_r}, {l}) is above the k < 0 cutoff")
    return _energy(2 * n_r + l + 1.5, op, params)


def higgs3d_spectrum(n_r_max, l_max, op, params):
    out = []
    for l in range(l_max + 1):
        for n_r in range(n_r_max + 1):
            if higgs3d_bound(n_r, l, op, params):
                out.append(SpectrumEntry(n_r, l, higgs3d_energy(n_r, l, op, params), "bound", "exact"))
    return out


def higgs3d_radial(n_r, l, op, params, r):
    """Reduced radial function chi(r) = r R(r).

    k > 0 (normalized, int chi^2 dr = 1):
        chi = N (k r^2)^((l+1)/2) u^(-l/2 - 5/4 - mt/2) P_n^(mt, l+1/2)((k r^2 - 1)/(k r^2 + 1)),
        N^2 = 2 sqrt(k) n! (2n + mt + l + 3/2) Gamma(n + mt + l + 3/2)
              / (Gamma(n + mt + 1) Gamma(n + l + 3/2)).
    k < 0 (normalized): chi = N (sqrt|k| r)^(l+1) u^((q-1)/2) P_n^(l+1/2, q)(1 - 2|k| r^2),
        q = mt - (2n + l + 3/2),
        N^2 = 2 sqrt|k| n! q Gamma(n + l + q + 3/2) / (Gamma(n + l + 3/2) Gamma(n + q + 1)).
    """
    _check_level(n_r)
    _check_level(l)
    k = params.k
    r = np.asarray(r, dtype=float)
    if k == 0:
        raise UnsupportedError("use the isotropic harmonic oscillator for k = 0")
    mt = _coeffs(op, params).mu_tilde
    n = n_r
    if k > 0:
        kr2 = k * r * r
        u = 1.0 + kr2
        lognorm = 0.5 * (math.log(2.0) + 0.5 * math.log(k) + log_gamma(n + 1)
                         + math.log(2 * n + mt + l + 1.5) + log_gamma(n + mt + l + 1.5)
                         - log_gamma(n + mt + 1) - log_gamma(n + l + 1.5))
        jac = jacobi_polynomial(n, mt, l + 0.5, (kr2 - 1.0) / (kr2 + 1.0))
        return math.exp(lognorm) * kr2 ** (0.5 * (l + 1)) * u ** (-0.5 * l - 1.25 - 0.5 * mt) * jac
    if not higgs3d_bound(n_r, l, op, params):
        raise NoBoundStateError(f"(n_r, l)=({n_r}, {l}) is above the k < 0 cutoff")
    ak = abs(k)
    if np.any(r >= 1.0 / math.sqrt(ak)):
        raise DomainError("k < 0 radial functions live on r < 1/sqrt(|k|)")
    q = mt - (2 * n + l + 1.5)
    u = 1.0 - ak * r * r
    lognorm = 0.5 * (math.log(2.0) + 0.5 * math.log(ak) + log_gamma(n + 1) + math.log(q)
                     + log_gamma(n + l + q + 1.5) - log_gamma(n + l + 1.5) - log_gamma(n + q + 1))
    jac = jacobi_polynomial(n, l + 0.5, q, 1.0 - 2.0 * ak * r * r)
    return math.exp(lognorm) * (math.sqrt(ak) * r) ** (l + 1) * u ** (0.5 * (q - 1.0)) * jac


def real_spherical_harmonic(l, m, theta, phi):
    """Orthonormal real spherical harmonic Y_lm(theta, phi)."""
    if abs(m) > l:
        raise DomainError("|m| must not exceed l")
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi)
                     * math.exp(math.lgamma(l - am + 1) - math.lgamma(l + am + 1)))
    leg = lpmv(am, l, np.cos(theta))
    if m == 0:
        return norm * leg
    if m > 0:
        return math.sqrt(2.0) * norm * leg * np.cos(m * phi)
    return math.sqrt(2.0) * norm * leg * np.sin(am * phi)


def higgs3d_wavefunction(n_r, l, m_q, op, params, r, theta, phi):
    """psi(r, theta, phi) = chi(r)/r * Y_lm(theta, phi) with a real Y_lm."""
    chi = higgs3d_radial(n_r, l, op, params, r)
    return chi / np.asarray(r, dtype=float) * real_spherical_harmonic(l, m_q, theta, phi)


__all__ = [
    "OrderingParameters", "ordering_coefficients", "higgs1d_energy", "higgs1d_spectrum",
    "higgs1d_wavefunction", "higgs1d_continuum_energy", "continuum_threshold",
    "bound_state_count_1d", "higgs3d_energy", "higgs3d_spectrum", "higgs3d_radial",
    "higgs3d_wavefunction", "higgs3d_bound", "real_spherical_harmonic",
]
