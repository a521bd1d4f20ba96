"""Quasi-exact states of the nonpolynomial oscillator V2 via the functional Bethe ansatz.

With z = k x^2 / (1 + k x^2) the generalized Schrodinger equation reduces to

    A(z) S'' + B(z) S' + C(z) S = 0,
    A = a0 + a1 z + ... + a4 z^4,  B = b0 + ... + b3 z^3,  C = c0 + c1 z + c2 z^2,

whose degree-n polynomial solutions S = prod (z - z_i) exist when the roots
obey the Bethe equations and the coefficients satisfy three closure
conditions.  For V2 the closure fixes both the energy and the mean ag of the
ordering exponents, so every state carries its own admissible ordering.

Sectors: in 1D ``l`` is 0 (even) or 1/2 (odd) and s = l; in 3D ``l`` is the
orbital number and the reduced radial function chi = r R uses s = (l + 1)/2.
The exponent gap a_bar - g_bar = n + s + 3/4 makes the states square
integrable with purely Gaussian moment integrals.
"""

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from .errors import (ConstraintError, DomainError, NoRealRootError,
                     QuasiExactLimitError, UnboundedStateError)
from .params import OrderingParameters, Potential, ordering_coefficients
from .quantum_higgs import real_spherical_harmonic
from .specfn import erf_moment, gauss_moment

_GAP_TOL = 1e-12
_CLOSURE_TOL = 1e-10


@dataclass(frozen=True)
class BetheProblem:
    """Coefficients of A S'' + B S' + C S = 0 in ascending powers of z."""

    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        a, b, c = (tuple(float(v) for v in t) for t in (self.a, self.b, self.c))
        if (len(a), len(b), len(c)) != (5, 4, 3):
            raise DomainError("expected 5 a-, 4 b- and 3 c-coefficients")
        if not any(a[1:]):
            raise DomainError("degenerate problem: a1..a4 all zero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def A(self, z):
        return np.polynomial.polynomial.polyval(z, self.a)

    def B(self, z):
        return np.polynomial.polynomial.polyval(z, self.b)

    def dA(self, z):
        return np.polynomial.polynomial.polyval(z, np.polynomial.polynomial.polyder(self.a))

    def dB(self, z):
        return np.polynomial.polynomial.polyval(z, np.polynomial.polynomial.polyder(self.b))


def bethe_residual(problem, roots):
    """sum_{j != i} 2/(z_i - z_j) + B(z_i)/A(z_i) for each root."""
    z = np.asarray(roots, dtype=float)
    if z.size == 0:
        return np.zeros(0)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, np.inf)
    if np.any(diff == 0):
        raise DomainError("coincident Bethe roots")
    den = problem.A(z)
    if np.any(den == 0):
        raise DomainError("Bethe root at a zero of A(z)")
    return np.sum(2.0 / diff, axis=1) + problem.B(z) / den


def _residual_jacobian(problem, z):
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, np.inf)
    off = 2.0 / diff**2
    A, B = problem.A(z), problem.B(z)
    diag = -np.sum(off, axis=1) + (problem.dB(z) * A - B * problem.dA(z)) / (A * A)
    jac = off.copy()
    np.fill_diagonal(jac, diag)
    return jac


def constraint_check(problem, n, roots):
    """Residuals (c2, c1, c0) of the closure conditions for a degree-n solution.

    c2 = -n(n-1) a4 - n b3
    c1 = -n b2 - n(n-1) a3 - (2(n-1) a4 + b3) sum z
    -c0 = (2(n-1) a4 + b3) sum z^2 + 2 a4 sum_{i<k} z_i z_k + (2(n-1) a3 + b2) sum z + n b1
    Each returned value is (lhs - rhs); all vanish for a valid solution.
    """
    a, b, c = problem.a, problem.b, problem.c
    z = np.asarray(roots, dtype=float)
    s1, s2 = float(np.sum(z)), float(np.sum(z * z))
    pairs = 0.5 * (s1 * s1 - s2)
    t = 2.0 * (n - 1) * a[4] + b[3]
    r2 = c[2] + n * (n - 1) * a[4] + n * b[3]
    r1 = c[1] + n * b[2] + n * (n - 1) * a[3] + t * s1
    r0 = c[0] + t * s2 + 2.0 * a[4] * pairs + (2.0 * (n - 1) * a[3] + b[2]) * s1 + n * b[1]
    return r2, r1, r0


def polynomial_residual(problem, roots):
    """Largest coefficient of A S'' + B S' + C S with S = prod (z - z_i).

    Independent of the closure formulas: it vanishes exactly when S solves
    the differential equation.
    """
    P = np.polynomial.polynomial
    s = P.polyfromroots(roots) if len(roots) else np.array([1.0])
    out = P.polyadd(P.polyadd(P.polymul(problem.a, P.polyder(s, 2)),
                              P.polymul(problem.b, P.polyder(s))),
                    P.polymul(problem.c, s))
    return float(np.max(np.abs(out)))


def _sector(l, dim):
    """(s, L): s is the power of z at the origin, L the orbital number (0 in 1D)."""
    if dim == 1:
        if l not in (0, 0.5):
            raise DomainError("1D sector label l must be 0 or 1/2")
        return float(l), 0
    if dim == 3:
        if l < 0 or int(l) != l:
            raise DomainError("orbital number must be a non-negative integer")
        return 0.5 * (l + 1), int(l)
    raise DomainError("dim must be 1 or 3")


_VARIANTS = {"hermitian-1D": 1, "nonhermitian-1D": 1, "nonhermitian-3D": 3}


def root_constant(l, dim):
    """Constant term kappa of the single-root equation: 2l + 1/2 (1D), l + 3/2 (3D)."""
    s, _ = _sector(l, dim)
    return 2.0 * s + 0.5


def v2_bethe_problem(n, l, mu, dim=1, delta=0.0, gamma_bar=0.0, ag_bar=0.0, eps=0.0):
    """Instance coefficients for V2 with d = n - delta and eps = E/(2 hbar^2 k).

    ``mu`` is the signed ratio omega0/(hbar k).
    """
    s, L = _sector(l, dim)
    d = n - delta
    a_, g = gamma_bar + delta, gamma_bar
    b = (2 * s + 0.5, 2 * delta + 2 * d - 2 * s - mu - 0.5, 2 * mu - 2 * d - 2 * delta, -mu)
    c2 = mu * (d + delta)
    c1 = (-eps - 4 * ag_bar + 2 * a_ * d - a_ * mu + d * d - 2 * d * g - d * mu + d
          + g * mu - 2 * g + s * mu + mu / 4)
    c0 = (eps + 2 * s * (delta + d) + d / 2 - g - s * mu + 2 * s - mu / 4
          + L * (L + 1) / 4)
    return BetheProblem((0.0, 1.0, -2.0, 1.0, 0.0), b, (c0, c1, c2))


def _quadratic_roots(mu, kappa):
    disc = (2.0 - mu) ** 2 - 4.0 * mu * kappa
    if disc < 0:
        raise NoRealRootError(f"no real root: discriminant {disc:.6g} < 0")
    if mu == 0:
        return [-kappa / 2.0]
    r = math.sqrt(disc)
    # z = (1/2 - 1/mu) +/- sqrt(disc)/(2 mu), larger root first (lower energy)
    roots = [0.5 - 1.0 / mu + r / (2.0 * mu), 0.5 - 1.0 / mu - r / (2.0 * mu)]
    return sorted(roots, reverse=True)


def _newton(problem, z0, tol=1e-13, maxiter=200):
    z = np.array(z0, dtype=float)
    for _ in range(maxiter):
        try:
            r = bethe_residual(problem, z)
        except DomainError:
            return None
        if not np.all(np.isfinite(r)):
            return None
        if np.max(np.abs(r)) < tol:
            return z
        try:
            step = np.linalg.solve(_residual_jacobian(problem, z), -r)
        except np.linalg.LinAlgError:
            return None
        lam, norm0 = 1.0, np.max(np.abs(r))
        while lam > 1e-6:
            trial = z + lam * step
            try:
                rt = bethe_residual(problem, trial)
                if np.all(np.isfinite(rt)) and np.max(np.abs(rt)) < norm0:
                    break
            except DomainError:
                pass
            lam *= 0.5
        else:
            return None
        z = trial
    return None


def solve_roots(n, l, mu, variant="nonhermitian-1D"):
    """Bethe roots of the degree-n sector.

    n = 1 is the quadratic mu z^2 + (2 - mu) z + kappa = 0 (both roots,
    larger first); n >= 2 uses damped Newton from deterministic starts and
    raises QuasiExactLimitError if no verified solution is found.
    """
    if variant not in _VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    if n < 0 or int(n) != n:
        raise DomainError("n must be a non-negative integer")
    dim = _VARIANTS[variant]
    kappa = root_constant(l, dim)
    if n == 0:
        return [[]]
    if n == 1:
        return [[z] for z in _quadratic_roots(mu, kappa)]
    problem = v2_bethe_problem(n, l, mu, dim)
    found = []
    for lo, hi in _starts(mu):
        for shift in (0.0, 0.37):
            z0 = lo + (hi - lo) * (np.arange(n) + 0.5 + shift) / (n + 1.0)
            with np.errstate(all="ignore"):
                z = _newton(problem, z0)
            if z is None or len(np.unique(np.round(z, 10))) < n:
                continue
            if np.max(np.abs(bethe_residual(problem, z))) >= 1e-10:
                continue
            z = np.sort(z)[::-1]
            if not any(np.allclose(z, f, atol=1e-9) for f in found):
                found.append(z)
    if not found:
        raise QuasiExactLimitError(
            f"Bethe equations for n={n} did not converge (quasi-exact limit)")
    return [list(map(float, f)) for f in found]


def _starts(mu):
    if mu > 0:
        return [(0.0, 1.0), (0.0, 0.5), (0.5, 1.0), (1.0, 3.0), (-2.0, 0.0)]
    return [(-1.0, 0.0), (-0.2, 0.0), (-5.0, 0.0), (1.0, 3.0), (0.0, 1.0)]


def closure_sigma1(n, l, mu, roots, delta, dim=1):
    """sigma1 = -4 ag - 3 g required by the closure conditions."""
    s, L = _sector(l, dim)
    z = np.asarray(roots, dtype=float)
    return (mu * np.sum(z * z) + (2.0 - mu) * np.sum(z) - 2.0 * n * n - 2.0 * s
            + delta * delta + 1.5 * delta - L * (L + 1) / 4.0)


def v2_energy(n, l, op, params, roots, dim=1):
    """(2n + 2s + 1/2) hbar omega0 + hbar^2 k [2 mu sum z^2 + 4(1 - mu) sum z
    - 4 n^2 - 4 s + a + g - L(L+1)/2]."""
    s, L = _sector(l, dim)
    mu = params.mu
    z = np.asarray(roots, dtype=float)
    bracket = (2.0 * mu * np.sum(z * z) + 4.0 * (1.0 - mu) * np.sum(z) - 4.0 * n * n - 4.0 * s
               + op.alpha_bar + op.gamma_bar - L * (L + 1) / 2.0)
    return float((2 * n + 2 * s + 0.5) * params.hbar * params.omega0
                 + params.hbar**2 * params.k * bracket)


def bethe_ordering(n, l, params, gamma_bar=0.0, root=0, dim=1, delta=None):
    """Ordering means that admit the (n, l) state built on root set ``root``.

    The gap a - g defaults to n + s + 3/4; ag follows from the closure.
    """
    s, _ = _sector(l, dim)
    if delta is None:
        delta = n + s + 0.75
    roots = _roots_for(n, l, params, dim)[root]
    sigma1 = closure_sigma1(n, l, params.mu, roots, delta, dim)
    return OrderingParameters(gamma_bar + delta, gamma_bar, -(sigma1 + 3.0 * gamma_bar) / 4.0)


def _roots_for(n, l, params, dim):
    _check_params(params)
    variant = "nonhermitian-3D" if dim == 3 else "nonhermitian-1D"
    return solve_roots(n, l, params.mu, variant)


def _check_params(params):
    if params.k == 0:
        raise DomainError("the Bethe construction requires k != 0")
    if params.potential is not Potential.NONPOLYNOMIAL:
        raise DomainError("Bethe states belong to the nonpolynomial potential V2")


@dataclass
class BetheSolution:
    n: int
    l: float
    roots: list
    d: float
    energy: float
    ordering_record: dict = field(default_factory=dict)
    constraints: dict = field(default_factory=dict)

    def to_dict(self):
        return {"n": self.n, "l": self.l, "roots": list(self.roots), "d": self.d,
                "energy": self.energy, "ordering": self.ordering_record,
                "constraints": self.constraints}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True,
                          default=lambda v: float(f"{v:.17g}"))


class BetheState:
    """Callable quasi-polynomial state.

    1D: Phi(x) = N exp(-omega0 x^2/(2 hbar u)) u^d (sqrt|k| x)^(2l) prod(z - z_i).
    3D: R(r) = N exp(-omega0 r^2/(2 hbar u)) (sqrt|k| r)^l u^d prod(z - z_i), and
        ``chi(r) = r R(r)``, ``full(r, theta, phi, m)`` = R Y_lm with a real Y_lm.
    Here u = 1 + k x^2, z = k x^2/u and d = n + g_bar - a_bar.  ``norm`` makes
    int Phi^2 dx = 1 (1D) or int R^2 r^2 dr = 1 (3D).
    """

    def __init__(self, n, l, dim, d, roots, params, norm=1.0):
        self.n, self.l, self.dim, self.d = n, l, dim, d
        self.roots = np.asarray(roots, dtype=float)
        self.params = params
        self.norm = norm

    def _shape(self, x):
        p = self.params
        x = np.asarray(x, dtype=float)
        u = 1.0 + p.k * x * x
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            z = p.k * x * x / u
            gauss = np.exp(-p.omega0 * x * x / (2.0 * p.hbar * u))
            power = 2.0 * self.l if self.dim == 1 else float(self.l)
            val = gauss * u**self.d * (math.sqrt(abs(p.k)) * x) ** power
            for zi in self.roots:
                val = val * (z - zi)
        if p.k < 0:
            val = np.where(u > 0, val, 0.0)
        return np.nan_to_num(val, nan=0.0) if p.k < 0 else val

    def __call__(self, x):
        return self.norm * self._shape(x)

    def chi(self, r):
        return np.asarray(r, dtype=float) * self(r)

    def full(self, r, theta, phi, m=0):
        if self.dim != 3:
            raise DomainError("full() is defined for 3D states")
        return self(r) * real_spherical_harmonic(self.l, m, theta, phi)

    def domain(self):
        if self.params.k < 0:
            edge = 1.0 / math.sqrt(-self.params.k)
            return (-edge if self.dim == 1 else 0.0, edge)
        return (-math.inf if self.dim == 1 else 0.0, math.inf)


class V2State(NamedTuple):
    wavefunction: BetheState
    energy: float
    solution: BetheSolution


def moment_norm_integral(n, l, roots, params, dim=1):
    """Closed form of int (Phi/N)^2 via truncated (k > 0) or full (k < 0) Gaussian moments.

    Requires the gap a - g = n + s + 3/4, under which y^2 = |z| turns the
    integrand into exp(-|mu| y^2) y^(2e) prod(y^2 -/+ z_i)^2.
    """
    s, L = _sector(l, dim)
    k, amu = params.k, abs(params.mu)
    P = np.polynomial.polynomial
    poly = P.polyfromroots(roots) if len(roots) else np.array([1.0])
    sq = P.polymul(poly, poly)
    e = int(round(2 * s)) if dim == 1 else L + 1
    if k > 0:
        total = sum(cj * erf_moment(j + e, amu) for j, cj in enumerate(sq))
    else:
        total = sum(cj * (-1) ** j * gauss_moment(j + e, amu) for j, cj in enumerate(sq))
    if dim == 1:
        return total / math.sqrt(abs(k))
    return 0.5 * total / abs(k) ** 1.5


def normalization_quadrature(func, domain, dim=1, tail_check=True):
    """int func^2 dx (1D) or int func^2 r^2 dr (3D radial) by adaptive quadrature.

    For infinite domains the large-|x| power law of func^2 is measured first
    and UnboundedStateError is raised when the integral diverges.
    """
    lo, hi = domain
    weight = (lambda x: 1.0) if dim == 1 else (lambda x: x * x)

    def integrand(x):
        return float(func(np.array(x))) ** 2 * weight(x)

    if tail_check and math.isinf(hi):
        x1, x2 = 1e4, 1e8
        f1, f2 = integrand(x1), integrand(x2)
        if not (math.isfinite(f1) and math.isfinite(f2)):
            raise UnboundedStateError("state overflows at large |x|")
        if f2 > 0:
            slope = math.log(f2 / f1) / math.log(x2 / x1) if f1 > 0 else math.inf
            if slope >= -1.0:
                raise UnboundedStateError(
                    f"|state|^2 decays like |x|^{slope:.3g}; integral diverges")
    pieces = [(lo, 0.0), (0.0, hi)] if lo < 0 < hi else [(lo, hi)]
    total = 0.0
    for a, b in pieces:
        val, _ = quad(integrand, a, b, epsabs=1e-14, epsrel=1e-12, limit=500)
        total += val
    if not math.isfinite(total):
        raise UnboundedStateError("normalization integral diverges")
    return total


def _build_state(n, l, op, params, dim, root, enforce_gap=True):
    _check_params(params)
    s, L = _sector(l, dim)
    if n < 0 or int(n) != n:
        raise DomainError("n must be a non-negative integer")
    delta = op.alpha_bar - op.gamma_bar
    if params.k > 0 and -delta >= 0:
        raise UnboundedStateError("k > 0 requires g_bar - a_bar < 0 for a bounded state")
    if enforce_gap and abs(delta - (n + s + 0.75)) > _GAP_TOL:
        raise ConstraintError(
            f"ordering gap a_bar - g_bar = {delta:.12g}, required n + s + 3/4 = {n + s + 0.75:g}")
    candidates = _roots_for(n, l, params, dim)
    sigma1 = ordering_coefficients(op, params).sigma1
    if root is None:
        picks = [r for r in candidates
                 if abs(closure_sigma1(n, l, params.mu, r, delta, dim) - sigma1)
                 <= _CLOSURE_TOL * max(1.0, abs(sigma1))]
        if not picks:
            raise ConstraintError("ordering violates the sigma1 closure for every root set")
        roots = picks[0]
    else:
        roots = candidates[root]
        need = closure_sigma1(n, l, params.mu, roots, delta, dim)
        if abs(need - sigma1) > _CLOSURE_TOL * max(1.0, abs(sigma1)):
            raise ConstraintError(
                f"sigma1 = {sigma1:.12g} but the closure requires {need:.12g}")
    energy = v2_energy(n, l, op, params, roots, dim)
    d = n - delta
    eps = energy / (2.0 * params.hbar**2 * params.k)
    problem = v2_bethe_problem(n, l, params.mu, dim, delta, op.gamma_bar,
                               op.alphagamma_bar, eps)
    c2, c1, c0 = constraint_check(problem, n, roots)
    res = bethe_residual(problem, roots)
    coeffs = ordering_coefficients(op, params)
    record = {"alpha_bar": op.alpha_bar, "gamma_bar": op.gamma_bar,
              "alphagamma_bar": op.alphagamma_bar, "sigma1": coeffs.sigma1,
              "sigma2": coeffs.sigma2, "eta1": coeffs.eta1,
              "sigma1_closure": closure_sigma1(n, l, params.mu, roots, delta, dim)}
    solution = BetheSolution(int(n), l, [float(z) for z in roots], float(d), energy, record,
                             {"c0": c0, "c1": c1, "c2": c2,
                              "residuals": [float(v) for v in res]})
    return roots, d, energy, solution


def v2_state(n, l, op, params, dim=1, root=None):
    """Normalized quasi-exact V2 state in 1D (l in {0, 1/2}) or 3D (orbital l).

    ``root`` selects the root set (0 = larger root, lower energy); by default
    the root set consistent with the sigma1 closure of ``op`` is used.
    """
    roots, d, energy, solution = _build_state(n, l, op, params, dim, root)
    state = BetheState(n, l, dim, d, roots, params)
    state.norm = 1.0 / math.sqrt(moment_norm_integral(n, l, roots, params, dim))
    return V2State(state, energy, solution)


def v2_state_1d(n, l, op, params, root=None):
    if n not in (0, 1):
        raise DomainError("explicit 1D states are provided for n = 0, 1")
    return v2_state(n, l, op, params, 1, root)


def v2_state_3d(n, l, op, params, root=None):
    if n not in (0, 1):
        raise DomainError("explicit 3D states are provided for n = 0, 1")
    return v2_state(n, l, op, params, 3, root)


def v2_hermitian_state_1d(n, l, op, params, root=0):
    """Hermitian-ordering state (a_bar = g_bar): psi = exp(...) u^n (kx^2)^l prod(z - z_i).

    Closure acts on eta1 = 2 mu sum z^2 + 2(2 - mu) sum z - 4n^2 - 4l; the
    state is unnormalized (it is not square integrable for k > 0).
    """
    _check_params(params)
    if abs(op.alpha_bar - op.gamma_bar) > _GAP_TOL:
        raise ConstraintError("Hermitian ordering requires a_bar = g_bar")
    s, _ = _sector(l, 1)
    roots = _roots_for(n, l, params, 1)[root]
    z = np.asarray(roots)
    mu = params.mu
    need = 2 * mu * np.sum(z * z) + 2 * (2 - mu) * np.sum(z) - 4 * n * n - 4 * s
    eta1 = ordering_coefficients(op, params).eta1
    if abs(need - eta1) > _CLOSURE_TOL * max(1.0, abs(eta1)):
        raise ConstraintError(f"eta1 = {eta1:.12g} but the closure requires {need:.12g}")
    energy = float((2 * n + 2 * s + 0.5) * params.hbar * params.omega0
                   + (-2 * mu * np.sum(z) + op.alpha_bar + op.gamma_bar + eta1)
                   * params.hbar**2 * params.k)
    return BetheState(n, l, 1, float(n), roots, params), energy


def erf_normalization(n, l, params, roots, dim=1):
    """Closed-form normalization constants written with erf and its mu-derivatives.

    mu here is omega0/(hbar |k|).  3D constants refer to the full function
    without an angular factor.  Returns None for sectors without such a
    constant.  Expressions whose radicand is negative are evaluated
    with its absolute value.  Kept for comparison only; ``v2_state`` uses
    ``moment_norm_integral``.
    """
    k, K = params.k, abs(params.k)
    mu = params.omega0 / (params.hbar * K)
    w = params.omega0 / params.hbar
    z1 = roots[0] if len(roots) else 0.0
    sp = math.sqrt(math.pi)
    erf_ = math.erf(math.sqrt(mu))
    ex = math.exp(-mu)

    def D(j):
        # d^j/dmu^j [erf(sqrt(mu))/sqrt(mu)] = (-1)^j M_j / sqrt(pi)
        return (-1) ** j * erf_moment(j, mu) / sp

    table = {
        (1, 0, 0): (lambda: (w / math.pi) ** 0.25,
                    lambda: (4 * w / math.pi) ** 0.25 / math.sqrt(erf_)),
        (1, 0, 0.5): (lambda: math.sqrt(abs(-w**1.5 * 2 / (K * sp))),
                      lambda: math.sqrt(mu**1.5 * math.sqrt(k)
                                        / (sp / 2 * erf_ - math.sqrt(mu) * ex))),
        (1, 1, 0): (lambda: math.sqrt(mu**2.5 * math.sqrt(K)
                                      / (sp * (0.75 + mu * z1 + mu**2 * z1**2))),
                    lambda: math.sqrt(mu**2.5 * math.sqrt(k)
                                      / (2 * erf_ / math.sqrt(mu) * (0.75 - mu * z1 + mu**2 * z1**2)
                                         - (1.5 - 2 * mu * z1 + mu**2 * z1**2) * ex / sp))),
        (1, 1, 0.5): (lambda: math.sqrt(abs(-mu**3.5 * math.sqrt(K)
                                            / (sp * (z1**2 * mu**3 / 2 + 1.5 * mu * z1
                                                     + 15 / 8 * mu**2 * z1**2)))),
                      lambda: math.sqrt(-math.sqrt(k) / (D(3) + 2 * z1 * D(2) + z1**2 * D(1)))),
        (3, 0, 0): (lambda: math.sqrt(mu**1.5 * math.sqrt(K) / math.pi),
                    lambda: math.sqrt(mu**1.5 * math.sqrt(k)
                                      / (math.pi * (erf_ - 2 * math.sqrt(mu) * ex)))),
        (3, 1, 0): (lambda: math.sqrt(8 * mu**3.5 * math.sqrt(K)
                                      / (sp * (15 + 3 * mu * z1 + z1**2))),
                    lambda: math.sqrt(2 * k * math.sqrt(k)
                                      / (-sp * (D(3) + 2 * z1 * D(2) + z1**2 * D(1))))),
        (3, 1, 1): (lambda: math.sqrt(mu**4.5 * math.sqrt(K)
                                      / (math.pi * (105 / 4 + 15 * mu * z1 + 3 * mu**2 * z1**2))),
                    lambda: math.sqrt(math.sqrt(k)
                                      / (2 * math.pi * sp * (D(4) - 2 * z1 * D(3) + z1**2 * D(2))))),
    }
    entry = table.get((dim, n, l))
    if entry is None:
        return None
    try:
        return entry[1 if k > 0 else 0]()
    except (ValueError, ZeroDivisionError):
        return math.nan


def node_index(n, l, roots, params, dim=1):
    """Interior node count of the state, i.e. its index in the Hermitian spectrum
    of the same ordering.  Only roots inside the range of z (0 <= z < 1 for
    k > 0, z <= 0 for k < 0) produce nodes; each gives two in 1D (at +/- x).
    """
    z = np.asarray(roots, dtype=float)
    inside = np.sum((z > 0) & (z < 1)) if params.k > 0 else np.sum(z < 0)
    if dim == 1:
        return int((1 if l == 0.5 else 0) + 2 * inside)
    return int(inside)
