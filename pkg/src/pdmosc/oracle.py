"""Finite-difference eigenvalue oracle for the Hermitian-ordered problems.

The Hermitian equation is written in self-adjoint form

    -(hbar^2/2) [(u^2 psi')' + Q u^2 psi] + V psi (+ hbar^2 l(l+1) u psi / (2 r^2)) = E psi

with u = 1 + k x^2 (so 1/m = u^2).  Under a map x = X(s) with uniform s-grid
this becomes -(hbar^2/2)(P psi_s)_s + X' q psi = E X' psi, P = u^2/X'.  The
3-point discretization with weights X' is symmetrized by W^(-1/2) and gives a
symmetric tridiagonal matrix.  Maps:

    linear  x = s on a finite box (k = 0, or the natural box for k < 0)
    tan     x = tan(s)/sqrt(k), s in (-pi/2, pi/2)   (k > 0, whole line)
    tanh    x = tanh(s)/sqrt(|k|), s in (-S, S)      (k < 0)

Non-Hermitian orderings are handled through their similarity-equivalent
Hermitian problem, which has the same (a_bar, g_bar, ag_bar) and spectrum.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import ConvergenceError, DomainError
from .hamiltonian import hermitian_q, potential
from .params import SpectrumEntry


@dataclass
class SturmLiouvilleGrid:
    """Interior nodes, 1/m at the nodes, effective potential q and weights X'(s).

    ``coords`` holds the uniform computational coordinate s.  The physical
    ``nodes`` X(s) are monotone but may saturate in floating point near the
    edge of a tanh map.
    """

    nodes: np.ndarray
    p: np.ndarray
    q: np.ndarray
    weights: np.ndarray
    coords: np.ndarray = None
    spacing: float = 1.0
    boundary: str = "dirichlet"


@dataclass
class TridiagonalOperator:
    """Symmetric tridiagonal matrix (diag, off) and the grid it discretizes."""

    diag: np.ndarray
    off: np.ndarray
    grid: SturmLiouvilleGrid
    mapping: str = "linear"
    meta: dict = field(default_factory=dict)

    @property
    def size(self):
        return self.diag.size

    def dense(self):
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


def _map(mapping, k, half, lo_zero, S, L):
    """Return (s_lo, s_hi, X, U, G): position, u and dX/ds as functions of s."""
    if mapping == "tan":
        if k <= 0:
            raise DomainError("tan map requires k > 0")
        sk = math.sqrt(k)
        return (0.0 if lo_zero else -half * math.pi, half * math.pi,
                lambda s: np.tan(s) / sk, lambda s: 1.0 / np.cos(s) ** 2,
                lambda s: 1.0 / (sk * np.cos(s) ** 2))
    if mapping == "tanh":
        if k >= 0:
            raise DomainError("tanh map requires k < 0")
        sk = math.sqrt(-k)
        # u = 1 - |k| x^2 = sech^2 s, evaluated directly to avoid cancellation
        return (0.0 if lo_zero else -S, S, lambda s: np.tanh(s) / sk,
                lambda s: 1.0 / np.cosh(s) ** 2, lambda s: 1.0 / (sk * np.cosh(s) ** 2))
    if mapping == "linear":
        if L is None:
            L = 1.0 / math.sqrt(-k) if k < 0 else 12.0
        if k < 0 and L > 1.0 / math.sqrt(-k):
            raise DomainError("linear box exceeds the natural domain |x| < 1/sqrt(|k|)")
        return (0.0 if lo_zero else -L, L, lambda s: s, lambda s: 1.0 + k * s * s,
                lambda s: np.ones_like(s))
    raise DomainError(f"unknown mapping {mapping!r}")


def default_mapping(k):
    return "tan" if k > 0 else ("tanh" if k < 0 else "linear")


def build_operator(params, op, N=2000, l=None, mapping=None, S=40.0, L=None):
    """Symmetric tridiagonal discretization on N interior nodes.

    ``l`` None gives the 1D problem on the whole domain; an integer l gives
    the reduced radial problem for chi = r R on r > 0.
    """
    if N < 50:
        raise DomainError("N must be at least 50")
    k, hb2 = params.k, params.hbar**2
    mapping = mapping or default_mapping(k)
    radial = l is not None
    s_lo, s_hi, X, U, G = _map(mapping, k, 0.5, radial, S, L)
    s = np.linspace(s_lo, s_hi, N + 2)
    h = s[1] - s[0]
    si, sm = s[1:-1], 0.5 * (s[:-1] + s[1:])
    x, u, um = X(si), U(si), U(sm)
    if np.any(um <= 0) or np.any(u <= 0):
        raise DomainError("non-positive 1/m on the grid; invalid ordering or domain")
    P = um * um / G(sm)
    W = G(si)
    q = -0.5 * hb2 * hermitian_q(x, op, k, u) * u * u + potential(x, params, u)
    if radial:
        q = q + 0.5 * hb2 * l * (l + 1) * u / (x * x)
    A = 0.5 * hb2 * (P[:-1] + P[1:]) / (h * h) + q * W
    off = -0.5 * hb2 * P[1:-1] / (h * h)
    diag = A / W
    off = off / np.sqrt(W[:-1] * W[1:])
    grid = SturmLiouvilleGrid(x, u * u, q, W, si, h)
    return TridiagonalOperator(diag, off, grid, mapping,
                               {"N": N, "l": l, "S": S if mapping == "tanh" else None,
                                "L": L})


def sturm_count(matrix, lam):
    """Number of eigenvalues strictly below each value in ``lam``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    d, e2 = matrix.diag, matrix.off**2
    tiny = np.finfo(float).tiny * 1e10
    q = d[0] - lam
    count = (q < 0).astype(np.int64)
    for i in range(1, d.size):
        q = np.where(q == 0, -tiny, q)
        q = d[i] - lam - e2[i - 1] / q
        count += q < 0
    return count


def _gershgorin(matrix):
    d, e = matrix.diag, np.abs(matrix.off)
    r = np.zeros_like(d)
    r[:-1] += e
    r[1:] += e
    return float(np.min(d - r)), float(np.max(d + r))


def eigenvalues(matrix, count, tol=1e-12, sections=16):
    """Lowest ``count`` eigenvalues by Sturm-sequence multisection.

    Each level is bracketed to ``tol`` absolute; all brackets are refined
    together, ``sections`` trial points per level per sweep.
    """
    if count < 1 or count > matrix.size:
        raise DomainError(f"count must be in 1..{matrix.size}")
    glo, ghi = _gershgorin(matrix)
    lo = np.full(count, glo)
    hi = np.full(count, ghi)
    idx = np.arange(count)
    frac = np.arange(1, sections + 1) / (sections + 1.0)
    for _ in range(200):
        width = hi - lo
        if np.all(width <= tol + 4 * np.finfo(float).eps * np.maximum(abs(lo), abs(hi))):
            break
        pts = lo[:, None] + width[:, None] * frac[None, :]
        c = sturm_count(matrix, pts.ravel()).reshape(count, sections)
        # eigenvalue idx lies where the count first exceeds idx
        above = c > idx[:, None]
        first = np.where(above.any(axis=1), above.argmax(axis=1), sections)
        new_lo = np.where(first > 0, pts[idx, np.maximum(first - 1, 0)], lo)
        new_hi = np.where(first < sections, pts[idx, np.minimum(first, sections - 1)], hi)
        lo, hi = new_lo, new_hi
    else:
        raise ConvergenceError("Sturm bisection did not converge")
    return list(0.5 * (lo + hi))


def eigenvector(matrix, energy, iterations=3):
    """Eigenvector by inverse iteration, returned in the physical variable.

    The result is psi at the interior nodes, normalized with the map
    weights (sum psi^2 X' ds = 1), and signed positive at the first node
    whose magnitude exceeds 1e-8 of the maximum.
    """
    n = matrix.size
    ab = np.zeros((3, n))
    ab[0, 1:] = matrix.off
    ab[2, :-1] = matrix.off
    shift = energy + 1e-10 * max(1.0, abs(energy))
    ab[1] = matrix.diag - shift
    v = np.ones(n) / math.sqrt(n)
    for _ in range(iterations):
        v = solve_banded((1, 1), ab, v)
        v /= np.linalg.norm(v)
    first = np.argmax(np.abs(v) > 1e-8 * np.max(np.abs(v)))
    if v[first] < 0:
        v = -v
    return v / np.sqrt(matrix.grid.weights * matrix.grid.spacing)


def oracle_eigenvalues(params, op, count, l=None, N=2000, richardson=True, **kw):
    """Lowest eigenvalues, Richardson-extrapolated from N and 2N (order 2)."""
    e1 = np.array(eigenvalues(build_operator(params, op, N, l, **kw), count))
    if not richardson:
        return list(e1)
    e2 = np.array(eigenvalues(build_operator(params, op, 2 * N + 1, l, **kw), count))
    # with N + 1 intervals -> 2N + 2 intervals the spacing halves exactly
    return list((4.0 * e2 - e1) / 3.0)


def oracle_spectrum(params, op, count, l=None, N=2000, **kw):
    vals = oracle_eigenvalues(params, op, count, l, N, **kw)
    return [SpectrumEntry(n, 0 if l is None else l, float(E), "bound", "oracle")
            for n, E in enumerate(vals)]


def count_below(params, op, threshold, l=None, N=4000, **kw):
    """Number of oracle eigenvalues below ``threshold``."""
    return int(sturm_count(build_operator(params, op, N, l, **kw), threshold)[0])


@dataclass
class SpectrumComparison:
    levels: list
    passed: bool
    tol: float
    params: dict = field(default_factory=dict)
    ordering: dict = field(default_factory=dict)

    def to_dict(self):
        return {"params": self.params, "ordering": self.ordering, "tol": self.tol,
                "levels": self.levels, "pass": self.passed}


def compare_spectra(analytic, numeric, tol, params=None, ordering=None):
    """Per-level absolute and relative errors; passes iff all rel_err <= tol."""
    if len(analytic) != len(numeric):
        raise DomainError("spectra must have equal length")
    levels = []
    for i, (a, b) in enumerate(zip(analytic, numeric)):
        ea = a.energy if isinstance(a, SpectrumEntry) else float(a)
        eb = b.energy if isinstance(b, SpectrumEntry) else float(b)
        n = a.n if isinstance(a, SpectrumEntry) else i
        err = abs(ea - eb)
        rel = err / abs(ea) if ea != 0 else err
        levels.append({"n": n, "analytic": ea, "numeric": eb, "abs_err": err, "rel_err": rel})
    passed = all(lv["rel_err"] <= tol for lv in levels)
    return SpectrumComparison(levels, passed, tol,
                              params.to_dict() if params is not None else {},
                              ordering.to_dict() if ordering is not None else {})
