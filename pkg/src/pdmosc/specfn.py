"""Special functions used throughout the package.

Jacobi elliptic functions and complete elliptic integrals come from the
arithmetic-geometric mean; terminating hypergeometric series, Ferrers
(associated Legendre) functions of real degree and order, and Jacobi
polynomials are evaluated by explicit sums or recurrences.  Error and
gamma functions delegate to the C library through :mod:`math`.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy import special as _sp

from .errors import DivergenceError, DomainError, PoleError, UnsupportedError

_AGM_TOL = 1e-15


def _require_finite(*values):
    for v in values:
        if np.any(np.isnan(v)):
            raise DomainError("NaN input")


def _is_nonpositive_int(v):
    return v <= 0 and float(v).is_integer()


class EllipticTriple(NamedTuple):
    sn: object
    cn: object
    dn: object


def _agm_ladder(m):
    """Return the a_n, c_n sequences of the AGM started at (1, sqrt(1-m))."""
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(m)
    avals, cvals = [a], [c]
    while abs(c) > _AGM_TOL * a:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        avals.append(a)
        cvals.append(c)
        if len(avals) > 64:
            break
    return avals, cvals


def jacobi_elliptic(u, m):
    """Jacobi sn, cn, dn with parameter ``m`` (so that dn^2 + m sn^2 = 1).

    ``u`` may be a scalar or an array.  Uses the descending Landen
    sequence (DLMF 22.20.ii); m = 1 is handled by the hyperbolic limit.
    """
    _require_finite(u, m)
    m = float(m)
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"parameter m={m} outside [0, 1]")
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    if m == 1.0:
        sech = 1.0 / np.cosh(u)
        out = EllipticTriple(np.tanh(u), sech, sech.copy())
    elif m == 0.0:
        out = EllipticTriple(np.sin(u), np.cos(u), np.ones_like(u))
    else:
        avals, cvals = _agm_ladder(m)
        nsteps = len(avals) - 1
        phi = (2.0**nsteps) * avals[-1] * u
        prev = phi
        for i in range(nsteps, 0, -1):
            prev = phi
            phi = 0.5 * (phi + np.arcsin(cvals[i] / avals[i] * np.sin(phi)))
        sn, cn = np.sin(phi), np.cos(phi)
        root = np.sqrt(np.maximum(1.0 - m * sn * sn, 0.0))
        if nsteps == 0:
            dn = root
        else:
            # cn / cos(phi_1 - phi_0) is 0/0 near sn = +-1; there |cn| << dn and
            # the square root is accurate
            den = np.cos(prev - phi)
            big = np.abs(den) > 0.1
            dn = np.where(big, cn / np.where(big, den, 1.0), root)
        out = EllipticTriple(sn, cn, dn)
    if scalar:
        return EllipticTriple(*(float(v) for v in out))
    return out


def ellipk(m):
    """Complete elliptic integral of the first kind K(m), parameter m."""
    _require_finite(m)
    if m < 0.0 or m > 1.0:
        raise DomainError(f"parameter m={m} outside [0, 1)")
    if m == 1.0:
        raise DivergenceError("K(m) diverges at m = 1")
    avals, _ = _agm_ladder(m)
    return math.pi / (2.0 * avals[-1])


def ellipe(m):
    """Complete elliptic integral of the second kind E(m), parameter m."""
    _require_finite(m)
    if m < 0.0 or m > 1.0:
        raise DomainError(f"parameter m={m} outside [0, 1]")
    if m == 1.0:
        return 1.0
    avals, cvals = _agm_ladder(m)
    s = sum(2.0 ** (i - 1) * c * c for i, c in enumerate(cvals))
    return math.pi / (2.0 * avals[-1]) * (1.0 - s)


def complete_elliptic(m):
    """Return (K(m), E(m)); raises DivergenceError at m = 1."""
    return ellipk(m), ellipe(m)


def hyp2f1_terminating(a, b, c, z):
    """Gauss 2F1(a, b; c; z) when a or b is a non-positive integer.

    Evaluated as the exact finite sum; ``z`` may be an array.
    """
    _require_finite(a, b, c, z)
    if _is_nonpositive_int(a):
        nterm = int(-a)
    elif _is_nonpositive_int(b):
        nterm = int(-b)
    else:
        raise UnsupportedError("2F1 series does not terminate")
    if _is_nonpositive_int(c) and -c < nterm:
        raise DomainError("c is a non-positive integer inside the series")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for i in range(nterm):
        term = term * (a + i) * (b + i) / ((c + i) * (i + 1)) * z
        total = total + term
    return float(total) if total.ndim == 0 else total


def _hyp2f1_series(a, b, c, z, maxiter=100000):
    """Plain power series of 2F1 for |z| < 1, summed to convergence."""
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for i in range(maxiter):
        term = term * (a + i) * (b + i) / ((c + i) * (i + 1)) * z
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _hyp2f1(a, b, c, z):
    """2F1 on [0, 1), using an Euler transform when it makes the series finite."""
    if _is_nonpositive_int(a) or _is_nonpositive_int(b):
        return np.asarray(hyp2f1_terminating(a, b, c, z))
    ca, cb = c - a, c - b
    if _is_nonpositive_int(ca) or _is_nonpositive_int(cb):
        z = np.asarray(z, dtype=float)
        return (1.0 - z) ** (c - a - b) * np.asarray(hyp2f1_terminating(ca, cb, c, z))
    return _hyp2f1_series(a, b, c, z)


def rgamma(x):
    """Reciprocal gamma function, zero at the poles."""
    if _is_nonpositive_int(x):
        return 0.0
    return 1.0 / math.gamma(x)


def assoc_legendre(nu, mu, x):
    """Ferrers function P^mu_nu(x) on -1 < x < 1 for real degree and order.

    Uses P^mu_nu(x) = ((1+x)/(1-x))^(mu/2) 2F1(-nu, nu+1; 1-mu; (1-x)/2) / Gamma(1-mu),
    with the integer-order reflection for positive integer mu.  No Condon-Shortley
    phase beyond what the hypergeometric form carries.
    """
    _require_finite(nu, mu, x)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise DomainError("Ferrers function requires |x| < 1")
    if mu > 0 and float(mu).is_integer():
        m = int(mu)
        # P^{m} = (-1)^m Gamma(nu+m+1)/Gamma(nu-m+1) P^{-m}
        ratio = rgamma(nu - m + 1.0)
        if ratio == 0.0:
            val = np.zeros_like(x)
        else:
            val = (-1) ** m * math.gamma(nu + m + 1.0) * ratio * assoc_legendre(nu, -m, x)
    else:
        z = 0.5 * (1.0 - x)
        val = ((1.0 + x) / (1.0 - x)) ** (0.5 * mu) * _hyp2f1(-nu, nu + 1.0, 1.0 - mu, z) * rgamma(1.0 - mu)
    return float(val) if np.ndim(val) == 0 else val


def jacobi_polynomial(n, a, b, x):
    """Jacobi polynomial P_n^(a,b)(x) by the three-term recurrence."""
    _require_finite(a, b, x)
    if n < 0 or int(n) != n:
        raise DomainError("degree must be a non-negative integer")
    n = int(n)
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return float(p0) if x.ndim == 0 else p0
    p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for j in range(2, n + 1):
        s = 2 * j + a + b
        c1 = 2 * j * (j + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
        c3 = 2 * (j + a - 1) * (j + b - 1) * s
        p0, p1 = p1, (c2 * p1 - c3 * p0) / c1
    return float(p1) if x.ndim == 0 else p1


def gamma(x):
    """Gamma function with an explicit pole check."""
    _require_finite(x)
    if _is_nonpositive_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def log_gamma(x):
    """log|Gamma(x)| with an explicit pole check."""
    _require_finite(x)
    if _is_nonpositive_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.lgamma(x)


def erf_gamma(x):
    """Return (erf(x), Gamma(x))."""
    _require_finite(x)
    return math.erf(x), gamma(x)


def erf_moment(j, mu):
    """Truncated Gaussian moment int_{-1}^{1} y^(2j) exp(-mu y^2) dy, mu > 0.

    Equal to (-d/dmu)^j [sqrt(pi) erf(sqrt(mu)) / sqrt(mu)]; evaluated through
    the regularized lower incomplete gamma function.
    """
    if mu <= 0:
        raise DomainError("mu must be positive")
    s = j + 0.5
    return math.exp(math.lgamma(s) - s * math.log(mu)) * float(_sp.gammainc(s, mu))


def gauss_moment(j, mu):
    """Full-line Gaussian moment int y^(2j) exp(-mu y^2) dy, mu > 0."""
    if mu <= 0:
        raise DomainError("mu must be positive")
    s = j + 0.5
    return math.exp(math.lgamma(s) - s * math.log(mu))
