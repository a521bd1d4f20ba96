import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdmosc import bethe, oracle, quantum_higgs as qh
from pdmosc.errors import DomainError
from pdmosc.params import OrderingParameters, SpectrumEntry, SystemParams

OP0 = OrderingParameters()
OPG = OrderingParameters(-0.25, 0.15, -0.05)


def test_harmonic_spectrum():
    vals = oracle.oracle_eigenvalues(SystemParams(0.0), OP0, 5, N=2000, L=12.0)
    assert np.max(np.abs(np.array(vals) - (np.arange(5) + 0.5))) < 1e-6


def test_second_order_convergence():
    p = SystemParams(0.0)
    errs = [abs(oracle.eigenvalues(oracle.build_operator(p, OP0, N, L=12.0), 1)[0] - 0.5)
            for N in (399, 799, 1599)]
    # N + 1 intervals doubling each time
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.02)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.02)
    assert math.log2(errs[0] / errs[2]) / 2 >= 1.98


@pytest.mark.parametrize("k,mapping", [(0.3, "tan"), (-0.3, "tanh"), (0.0, "linear"),
                                       (-0.3, "linear")])
def test_matrix_is_symmetric_and_p_positive(k, mapping):
    m = oracle.build_operator(SystemParams(k), OPG, 200, mapping=mapping, L=None)
    dense = m.dense()
    assert np.array_equal(dense, dense.T)
    assert np.all(m.grid.p > 0)
    assert np.all(np.diff(m.grid.coords) > 0)
    assert np.all(np.diff(m.grid.nodes) >= 0)


def test_eigenvalues_strictly_increasing():
    m = oracle.build_operator(SystemParams(0.3), OPG, 500)
    vals = oracle.eigenvalues(m, 12)
    assert np.all(np.diff(vals) > 0)
    ref = np.linalg.eigvalsh(m.dense())[:12]
    assert np.max(np.abs(np.array(vals) - ref)) < 1e-9


@settings(max_examples=25, deadline=None)
@given(d=st.lists(st.floats(-5, 5), min_size=60, max_size=120), seed=st.integers(0, 10**6))
def test_sturm_bisection_matches_lapack(d, seed):
    rng = np.random.default_rng(seed)
    off = rng.uniform(-2, 2, len(d) - 1)
    m = oracle.TridiagonalOperator(np.array(d), off, None)
    count = min(8, len(d))
    vals = oracle.eigenvalues(m, count)
    ref = np.linalg.eigvalsh(m.dense())[:count]
    assert np.max(np.abs(np.array(vals) - ref)) < 1e-10


def test_eigenvector_sign_and_shape():
    p = SystemParams(0.0)
    m = oracle.build_operator(p, OP0, 1500, L=10.0)
    E = oracle.eigenvalues(m, 3)
    x = m.grid.nodes
    h = x[1] - x[0]
    for n in range(3):
        v = oracle.eigenvector(m, E[n])
        first = np.argmax(np.abs(v) > 1e-8 * np.max(np.abs(v)))
        assert v[first] > 0
        assert np.sum(v * v) * h == pytest.approx(1.0, rel=1e-10)
        exact = qh.higgs1d_wavefunction(n, OP0, p, x)
        exact = exact * np.sign(exact[first])
        assert np.max(np.abs(v - exact)) < 1e-4
    # reproducible
    assert np.array_equal(oracle.eigenvector(m, E[1]), oracle.eigenvector(m, E[1]))


@pytest.mark.parametrize("k", [0.3, -0.3])
def test_higgs_generic_ordering_matches_closed_form(k):
    p = SystemParams(k)
    analytic = qh.higgs1d_spectrum(3, OPG, p)
    numeric = oracle.oracle_eigenvalues(p, OPG, len(analytic), N=1500)
    # the top k < 0 level sits just below threshold and is the least resolved
    rep = oracle.compare_spectra(analytic, numeric, 1e-6 if k > 0 else 1e-4)
    assert rep.passed, rep.levels


def test_radial_matches_closed_form():
    p = SystemParams(0.3)
    for l in (0, 1):
        numeric = oracle.oracle_eigenvalues(p, OPG, 3, l=l, N=1500)
        analytic = [qh.higgs3d_energy(n, l, OPG, p) for n in range(3)]
        assert np.max(np.abs(np.array(numeric) / analytic - 1)) < 1e-6


def test_isospectral_with_nonhermitian_bethe_state():
    p = SystemParams(-0.1, 1.0, potential="v2")
    op = bethe.bethe_ordering(1, 0.0, p, 0.0, 1)
    state, E, sol = bethe.v2_state(1, 0.0, op, p, 1, 1)
    idx = bethe.node_index(1, 0.0, sol.roots, p)
    ev = oracle.oracle_eigenvalues(p, op, idx + 1, N=1500, S=12.0)
    assert ev[idx] == pytest.approx(E, rel=1e-6)


def test_count_below_threshold():
    p = SystemParams(-0.3)
    thr = qh.continuum_threshold(OP0, p)
    assert oracle.count_below(p, OP0, thr, N=2000) == qh.bound_state_count_1d(OP0, p)


def test_compare_spectra_report():
    same = [SpectrumEntry(n, 0, n + 0.5) for n in range(3)]
    rep = oracle.compare_spectra(same, [0.5, 1.5, 2.5], 1e-12)
    assert rep.passed
    assert all(lv["abs_err"] == 0 and lv["rel_err"] == 0 for lv in rep.levels)
    d = rep.to_dict()
    assert set(d) == {"params", "ordering", "levels", "pass"} | {"tol"}
    assert set(d["levels"][0]) == {"n", "analytic", "numeric", "abs_err", "rel_err"}
    assert not oracle.compare_spectra([1.0], [1.1], 1e-3).passed
    with pytest.raises(DomainError):
        oracle.compare_spectra([1.0], [1.0, 2.0], 1e-3)


def test_argument_errors():
    m = oracle.build_operator(SystemParams(0.0), OP0, 60, L=5.0)
    with pytest.raises(DomainError):
        oracle.eigenvalues(m, 61)
    with pytest.raises(DomainError):
        oracle.eigenvalues(m, 0)
    with pytest.raises(DomainError):
        oracle.build_operator(SystemParams(0.0), OP0, 49)
    with pytest.raises(DomainError):
        oracle.build_operator(SystemParams(-0.3), OP0, 100, mapping="linear", L=5.0)
    with pytest.raises(DomainError):
        oracle.build_operator(SystemParams(-0.3), OP0, 100, mapping="tan")
