"""Classical trajectories of the two position-dependent-mass oscillators.

Both systems share the Lagrangian kinetic term xdot^2 / (2 (1 + k x^2)^2).
Closed-form solutions are provided for the Higgs potential (trigonometric),
the nonpolynomial potential V2 (Jacobi elliptic) and the 3D Higgs radial
motion; ``integrate_eom`` is an independent fixed-step RK4 check.
"""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, DomainExitError, UnsupportedError
from .params import Potential, SystemParams
from .specfn import jacobi_elliptic


@dataclass
class Trajectory:
    """Time samples of (x, xdot) and the first integral ``eps`` at each sample."""

    t: np.ndarray
    x: np.ndarray
    xdot: np.ndarray
    eps: np.ndarray

    @property
    def conserved(self):
        return float(self.eps[0])

    @property
    def max_relative_drift(self):
        return float(np.max(np.abs(self.eps - self.eps[0])) / abs(self.eps[0]))

    def to_csv(self, stream=None):
        """Write ``t,x,xdot,eps`` rows with 17 significant digits."""
        own = stream is None
        if own:
            stream = io.StringIO()
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["t", "x", "xdot", "eps"])
        for row in zip(self.t, self.x, self.xdot, self.eps):
            w.writerow([f"{v:.17g}" for v in row])
        return stream.getvalue() if own else None


def first_integral(x, xdot, params):
    """Energy-like first integral: xdot^2/u^2 + omega0^2 x^2 (Higgs) or
    (xdot^2 + omega0^2 x^2)/u^2 (V2), with u = 1 + k x^2.

    The mechanical energy is half of this value.
    """
    u = 1.0 + params.k * np.asarray(x) ** 2
    w2 = params.omega0**2
    if params.potential is Potential.HIGGS:
        return xdot**2 / u**2 + w2 * x**2
    return (xdot**2 + w2 * x**2) / u**2


def higgs_frequency(A, params):
    """Angular frequency Omega = omega0 / sqrt(1 - k A^2) of the Higgs orbit."""
    s = 1.0 - params.k * A * A
    if s <= 0:
        raise DomainError(f"amplitude {A} violates |A| < 1/sqrt(k)")
    return params.omega0 / math.sqrt(s)


def higgs_omega0_for(Omega, A, k):
    """omega0 that produces orbital frequency ``Omega`` at amplitude ``A``."""
    s = 1.0 - k * A * A
    if s <= 0:
        raise DomainError(f"amplitude {A} violates |A| < 1/sqrt(k)")
    return Omega * math.sqrt(s)


def higgs_trajectory(A, params, t, C=0.0):
    """Closed-form Higgs orbit x(t) = A sin(th)/sqrt(1 - k A^2 sin^2 th), th = Omega t + C.

    Returns (x, xdot); xdot is the exact time derivative.
    """
    Omega = higgs_frequency(A, params)
    th = Omega * np.asarray(t, dtype=float) + C
    s, c = np.sin(th), np.cos(th)
    den = 1.0 - params.k * A * A * s * s
    x = A * s / np.sqrt(den)
    xdot = A * Omega * c / den**1.5
    return x, xdot


def v2_trajectory(A, params, t, form="sn"):
    """Closed-form V2 orbit for 0 <= k A^2 <= 1.

    ``form="sn"``: x = A sn(omega0 t/(1 + k A^2)) with elliptic modulus k A^2.
    ``form="landen"``: the equivalent ascending-Landen form
    x = 2A/(1 + kA^2) sn cn/dn evaluated at omega0 t/2 with modulus
    m1 = 2 sqrt(kA^2)/(1 + kA^2).
    Moduli are converted to parameters (modulus squared) for ``jacobi_elliptic``.
    Returns (x, xdot).
    """
    kap = params.k * A * A
    if not 0.0 <= kap <= 1.0:
        raise UnsupportedError(f"modulus k A^2 = {kap} outside [0, 1]; use integrate_eom")
    t = np.asarray(t, dtype=float)
    w0 = params.omega0
    if form == "sn":
        c = w0 / (1.0 + kap)
        sn, cn, dn = jacobi_elliptic(c * t, kap * kap)
        return A * sn, A * c * cn * dn
    if form == "landen":
        m1 = 2.0 * math.sqrt(kap) / (1.0 + kap)
        m1sq = min(m1 * m1, 1.0)
        sn, cn, dn = jacobi_elliptic(0.5 * w0 * t, m1sq)
        pref = 2.0 * A / (1.0 + kap)
        x = pref * sn * cn / dn
        dfdu = cn * cn - sn * sn + m1sq * sn * sn * cn * cn / (dn * dn)
        return x, pref * 0.5 * w0 * dfdu
    raise ValueError(f"unknown form {form!r}")


def v2_period(A, params):
    """Period of the bounded V2 orbit, 4 K(m) (1 + k A^2)/omega0 with m = (k A^2)^2."""
    from .specfn import ellipk

    kap = params.k * A * A
    if not 0.0 <= kap < 1.0:
        raise UnsupportedError("period defined only for 0 <= k A^2 < 1")
    return 4.0 * ellipk(kap * kap) * (1.0 + kap) / params.omega0


def _acceleration(params):
    k, w2 = params.k, params.omega0**2
    if params.potential is Potential.HIGGS:
        def acc(x, v):
            u = 1.0 + k * x * x
            return 2.0 * k * x * v * v / u - w2 * u * u * x
    else:
        def acc(x, v):
            u = 1.0 + k * x * x
            return 2.0 * k * x * v * v / u - w2 * (1.0 - k * x * x) * x / u
    return acc


def integrate_eom(params, x0, xdot0, t_end, step):
    """Fixed-step classical RK4 integration of the equation of motion.

    The step is adjusted down so that an integer number of steps lands on
    ``t_end``.  Raises DomainExitError if 1 + k x^2 becomes non-positive.
    """
    if step <= 0 or t_end <= 0:
        raise DomainError("step and t_end must be positive")
    k = params.k
    if 1.0 + k * x0 * x0 <= 0:
        raise DomainError("initial position outside |x| < 1/sqrt(|k|)")
    nsteps = max(1, math.ceil(t_end / step - 1e-12))
    h = t_end / nsteps
    acc = _acceleration(params)
    xs = np.empty(nsteps + 1)
    vs = np.empty(nsteps + 1)
    x, v = float(x0), float(xdot0)
    xs[0], vs[0] = x, v
    h2, h6 = 0.5 * h, h / 6.0
    for i in range(1, nsteps + 1):
        a1 = acc(x, v)
        x2, v2 = x + h2 * v, v + h2 * a1
        a2 = acc(x2, v2)
        x3, v3 = x + h2 * v2, v + h2 * a2
        a3 = acc(x3, v3)
        x4, v4 = x + h * v3, v + h * a3
        a4 = acc(x4, v4)
        xn = x + h6 * (v + 2.0 * v2 + 2.0 * v3 + v4)
        vn = v + h6 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        if not (math.isfinite(xn) and math.isfinite(vn)) or 1.0 + k * xn * xn <= 0:
            raise DomainExitError(
                f"trajectory left the admissible domain near t={i * h:.6g}",
                last_state=((i - 1) * h, x, v))
        x, v = xn, vn
        xs[i], vs[i] = x, v
    t = np.linspace(0.0, t_end, nsteps + 1)
    return Trajectory(t, xs, vs, first_integral(xs, vs, params))


@dataclass(frozen=True)
class Radial3DConstants:
    """Constants of the 3D Higgs radial orbit.

    ``C1`` is the azimuthal constant, ``C2`` the total angular constant and
    ``C3`` the radial first integral.  With z = r^2/(1 + k r^2) the motion is
    z = A^2 (eta + sin(Omega t + kappa)).
    """

    C1: float
    C2: float
    C3: float
    Omega: float
    Asq: float
    eta: float

    @classmethod
    def from_integrals(cls, C2, C3, params, C1=0.0):
        k, w2 = params.k, params.omega0**2
        quad = w2 + k * C3
        disc = (C3 - k * C2 * C2) ** 2 - 4.0 * w2 * C2 * C2
        if quad <= 0:
            raise DomainError("omega0^2 + k C3 must be positive for oscillatory motion")
        if disc <= 0:
            raise DomainError("no real amplitude: (C3 - k C2^2)^2 <= 4 omega0^2 C2^2")
        root = math.sqrt(disc)
        return cls(C1, C2, C3, 2.0 * math.sqrt(quad), root / (2.0 * quad),
                   (C3 + k * C2 * C2) / root)


def radial3d_trajectory(consts, params, t, kappa=0.0):
    """r(t) = A [(eta + sin th)/(1 - k eta A^2 - k A^2 sin th)]^(1/2), th = Omega t + kappa.

    Returns (r, rdot).
    """
    k, Asq, eta = params.k, consts.Asq, consts.eta
    th = consts.Omega * np.asarray(t, dtype=float) + kappa
    s = np.sin(th)
    num = eta + s
    den = 1.0 - k * Asq * (eta + s)
    if np.any(den == 0):
        raise DomainError("vanishing denominator in radial solution")
    rad = num / den
    if np.any(rad < 0):
        raise DomainError("negative radicand in radial solution")
    r = np.sqrt(Asq * rad)
    with np.errstate(divide="ignore", invalid="ignore"):
        rdot = np.where(r > 0, Asq * consts.Omega * np.cos(th) / (2.0 * r * den * den), 0.0)
    return r, rdot


def radial_first_integral(r, rdot, C2, params):
    """rdot^2/u^2 + C2^2 u/r^2 + omega0^2 r^2 for the 3D Higgs radial motion."""
    u = 1.0 + params.k * r * r
    return rdot**2 / u**2 + C2 * C2 * u / r**2 + params.omega0**2 * r * r
