import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from pdmosc import bethe
from pdmosc.errors import (ConstraintError, DomainError, NoRealRootError, QuasiExactLimitError,
                           UnboundedStateError)
from pdmosc.hamiltonian import (apply_hermitian, apply_nonhermitian, derivatives,
                                schrodinger_residual)
from pdmosc.params import OrderingParameters, SystemParams

SECTORS_1D = [(0, 0.0), (0, 0.5), (1, 0.0), (1, 0.5)]
SECTORS_3D = [(0, 0), (0, 1), (1, 0), (1, 1)]


def v2(k, w0=1.5):
    return SystemParams(k, w0, potential="v2")


def _variant(dim):
    return "nonhermitian-3D" if dim == 3 else "nonhermitian-1D"


def _states(params, gamma_bar=0.0):
    for dim, sectors in ((1, SECTORS_1D), (3, SECTORS_3D)):
        for n, l in sectors:
            for root in range(len(bethe.solve_roots(n, l, params.mu, _variant(dim)))):
                op = bethe.bethe_ordering(n, l, params, gamma_bar, root, dim)
                yield dim, n, l, root, op, bethe.v2_state(n, l, op, params, dim, root)


def test_root_reference_values():
    # (8 +/- sqrt(44)) / 20 and (13 + sqrt(79)) / 30
    assert bethe.solve_roots(1, 0, 10) == [[pytest.approx(0.73166247903553998, abs=1e-15)],
                                          [pytest.approx(0.068337520964460015, abs=1e-15)]]
    assert bethe.solve_roots(1, 0.5, 15)[0][0] == pytest.approx(0.7296064805771863, abs=1e-15)
    assert bethe.solve_roots(0, 0, 10) == [[]]


@settings(max_examples=100, deadline=None)
@given(mu=st.one_of(st.floats(-200, -0.05), st.floats(0.05, 200)),
       sector=st.sampled_from([(0.0, 1), (0.5, 1), (0, 3), (1, 3), (2, 3)]))
def test_n1_roots_match_quadratic_formula(mu, sector):
    l, dim = sector
    kappa = bethe.root_constant(l, dim)
    disc = (2 - mu) ** 2 - 4 * mu * kappa
    if disc < 0:
        with pytest.raises(NoRealRootError):
            bethe.solve_roots(1, l, mu, _variant(dim))
        return
    expected = sorted([(mu - 2 + s * math.sqrt(disc)) / (2 * mu) for s in (1, -1)], reverse=True)
    got = [r[0] for r in bethe.solve_roots(1, l, mu, _variant(dim))]
    assert got == pytest.approx(expected, abs=1e-12 * max(1.0, abs(expected[0])))


def test_closed_form_discriminants():
    # mu^2 - 6 mu + 4 (1D, l = 0) and mu^2 - 10 mu + 4 (1D, l = 1/2)
    for mu in (12.5, 20.0, -3.0):
        for l, c in ((0.0, 6), (0.5, 10)):
            z1, z2 = (r[0] for r in bethe.solve_roots(1, l, mu))
            assert (mu * (z1 - z2)) ** 2 == pytest.approx(mu * mu - c * mu + 4, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(mu=st.one_of(st.floats(-60, -0.2), st.floats(15, 60)), g=st.floats(-1, 1),
       sector=st.sampled_from([(1, 0.0, 1), (1, 0.5, 1), (1, 0, 3), (1, 1, 3), (2, 0.0, 1)]))
def test_residuals_and_constraints(mu, g, sector):
    n, l, dim = sector
    p = SystemParams(1.0 / mu, 1.0, potential="v2")
    try:
        sets = bethe.solve_roots(n, l, p.mu, _variant(dim))
    except QuasiExactLimitError:
        assume(False)
    for root, z in enumerate(sets):
        assume(n == 1 or root == 0)
        op = bethe.bethe_ordering(n, l, p, g, root, dim)
        if p.k > 0 and op.alpha_bar <= op.gamma_bar:
            continue
        _, energy, sol = bethe.v2_state(n, l, op, p, dim, root) if n < 2 else (None, None, None)
        if sol is None:
            continue
        assert max(abs(v) for v in sol.constraints["residuals"]) < 1e-10
        for key in ("c0", "c1", "c2"):
            assert abs(sol.constraints[key]) < 1e-10 * max(1.0, abs(mu) ** 2)


def test_polynomial_residual_is_independent_check():
    p = v2(0.1)
    for n, l in SECTORS_1D:
        op = bethe.bethe_ordering(n, l, p, 0.2)
        _, E, sol = bethe.v2_state(n, l, op, p)
        prob = bethe.v2_bethe_problem(n, l, p.mu, 1, op.alpha_bar - op.gamma_bar, op.gamma_bar,
                                      op.alphagamma_bar, E / (2 * p.hbar**2 * p.k))
        assert bethe.polynomial_residual(prob, sol.roots) < 1e-10


@pytest.mark.parametrize("mu", [20.0, 35.0, -10.0])
def test_quasi_exact_boundary_n2(mu):
    prob = bethe.v2_bethe_problem(2, 0.0, mu)
    try:
        sets = bethe.solve_roots(2, 0.0, mu)
    except QuasiExactLimitError:
        return
    for z in sets:
        assert np.max(np.abs(bethe.bethe_residual(prob, z))) < 1e-10


def test_quasi_exact_limit_raised():
    with pytest.raises(QuasiExactLimitError):
        bethe.solve_roots(2, 0.0, 10.0)


@pytest.mark.parametrize("k", [0.1, -0.1])
def test_states_solve_their_equation(k):
    p = v2(k)
    for dim, n, l, root, op, (state, E, sol) in _states(p, gamma_bar=-0.3):
        lo, hi = state.domain()
        if dim == 1:
            x = np.linspace(-2.5, 2.5, 200) if k > 0 else np.linspace(-0.98, 0.98, 200) * hi
        else:
            x = np.linspace(0.05, 2.5, 200) if k > 0 else np.linspace(0.02, 0.98, 200) * hi
        f = state if dim == 1 else state.chi
        res, scale = schrodinger_residual(f, E, op, p, x, hermitian=False,
                                          l=(l if dim == 3 else None), h=1e-3)
        assert np.max(np.abs(res)) / scale < 1e-8, (dim, n, l, root)
        norm = bethe.normalization_quadrature(state, (lo, hi), dim)
        assert norm == pytest.approx(1.0, abs=1e-10)


def test_lower_energy_for_larger_root():
    p = v2(0.1)
    for n, l in [(1, 0.0), (1, 0.5)]:
        e = [bethe.v2_state(n, l, bethe.bethe_ordering(n, l, p, 0, r), p, 1, r).energy
             for r in (0, 1)]
        assert e[0] < e[1]


def test_hermitian_and_nonhermitian_coincide_at_equal_exponents():
    """With a_bar = g_bar the two ordered operators are the same operator."""
    p = v2(-0.1)
    op = OrderingParameters(0.3, 0.3, -0.2)
    x = np.linspace(-2.5, 2.5, 50) + 0.01
    f = lambda y: np.exp(-y * y) * (1 + y)
    vals = derivatives(f, x, 1e-3)
    assert np.allclose(apply_hermitian(*vals, x, op, p), apply_nonhermitian(*vals, x, op, p),
                       rtol=1e-12, atol=1e-12)
    # the Hermitian-family state therefore solves both forms
    for n, l in [(0, 0.0), (1, 0.0), (1, 0.5)]:
        z = bethe.solve_roots(n, l, p.mu, "hermitian-1D")[0]
        s = l
        eta1 = 2 * p.mu * sum(t * t for t in z) + 2 * (2 - p.mu) * sum(z) - 4 * n * n - 4 * s
        g = 0.1
        # eta1 = 10 g - 8 (ag + 2 g) fixes <ag>
        op = OrderingParameters(g, g, (10 * g - eta1) / 8 - 2 * g)
        state, E = bethe.v2_hermitian_state_1d(n, l, op, p)
        xs = np.linspace(-0.95, 0.95, 200) / math.sqrt(0.1) + 0.001
        for herm in (True, False):
            res, scale = schrodinger_residual(state, E, op, p, xs, hermitian=herm, h=1e-3)
            assert np.max(np.abs(res)) / scale < 1e-8


def test_state_errors():
    p = v2(0.1)
    op = bethe.bethe_ordering(1, 0.0, p)
    with pytest.raises(ConstraintError):
        bethe.v2_state(1, 0.0, OrderingParameters(op.alpha_bar + 0.5, op.gamma_bar + 0.5,
                                                 op.alphagamma_bar), p)
    with pytest.raises(ConstraintError):
        bethe.v2_state(1, 0.0, OrderingParameters(op.alpha_bar, op.gamma_bar,
                                                 op.alphagamma_bar + 1.0), p)
    with pytest.raises(UnboundedStateError):
        bethe.v2_state(1, 0.0, OrderingParameters(0.0, 0.5, 0.0), p)
    with pytest.raises(DomainError):
        bethe.v2_state(0, 0.0, op, SystemParams(0.1))
    with pytest.raises(DomainError):
        bethe.v2_state(0, 0.0, op, v2(0.0))
    with pytest.raises(DomainError):
        bethe.v2_state_1d(2, 0.0, op, p)
    with pytest.raises(DomainError):
        bethe.solve_roots(1, 0.3, 10.0)
    with pytest.raises(DomainError):
        bethe.solve_roots(1, 0, 10.0, "bogus")


def test_both_root_sets_share_one_ordering():
    # for n = 1, mu z^2 + (2 - mu) z = -kappa on either root, so the sigma1
    # closure does not distinguish them: one Hamiltonian, two quasi-exact states
    p = v2(0.1)
    op = bethe.bethe_ordering(1, 0.5, p, 0.0, 0)
    other = bethe.bethe_ordering(1, 0.5, p, 0.0, 1)
    assert other.alpha_bar == op.alpha_bar and other.gamma_bar == op.gamma_bar
    assert other.alphagamma_bar == pytest.approx(op.alphagamma_bar, abs=1e-14)
    states = [bethe.v2_state(1, 0.5, op, p, 1, r) for r in (0, 1)]
    assert [st.solution.roots for st in states] == bethe.solve_roots(1, 0.5, p.mu)
    assert states[0].energy < states[1].energy
    assert bethe.v2_state(1, 0.5, op, p).solution.roots == states[0].solution.roots


def test_solution_json_roundtrip():
    p = v2(0.1)
    sol = bethe.v2_state(1, 0.0, bethe.bethe_ordering(1, 0.0, p), p).solution
    data = json.loads(sol.to_json())
    assert data["n"] == 1 and data["roots"] == pytest.approx(sol.roots)
    assert data["energy"] == sol.energy
    assert set(data["ordering"]) >= {"alpha_bar", "gamma_bar", "alphagamma_bar", "sigma1"}


def test_moment_normalization_matches_quadrature():
    for k in (0.1, -0.1):
        p = v2(k)
        for dim, n, l, root, op, (state, E, sol) in _states(p):
            lo, hi = state.domain()
            raw = bethe.moment_norm_integral(n, l, sol.roots, p, dim)
            state.norm = 1.0
            quadv = bethe.normalization_quadrature(state, (lo, hi), dim)
            assert raw == pytest.approx(quadv, rel=1e-10)


def test_node_index_counts_sign_changes():
    p = v2(-0.1, 1.0)
    for dim, n, l, root, op, (state, E, sol) in _states(p):
        if dim != 1:
            continue
        edge = 1 / math.sqrt(0.1)
        x = np.linspace(-edge, edge, 40001)[1:-1]
        y = state(x)
        y = y[np.abs(y) > 1e-12 * np.max(np.abs(y))]
        assert np.count_nonzero(np.diff(np.sign(y))) == bethe.node_index(n, l, sol.roots, p)
