import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdmosc import classical
from pdmosc.errors import DomainError, DomainExitError, UnsupportedError
from pdmosc.params import SystemParams


def higgs(k, w0=1.0):
    return SystemParams(k, w0)


def v2(k, w0=1.0):
    return SystemParams(k, w0, potential="v2")


def test_higgs_frequency_and_inverse():
    assert classical.higgs_frequency(1.0, higgs(0.5)) == pytest.approx(math.sqrt(2))
    w0 = classical.higgs_omega0_for(0.5, 1.0, 0.5)
    assert classical.higgs_frequency(1.0, higgs(0.5, w0)) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(DomainError):
        classical.higgs_frequency(2.0, higgs(0.5))


@settings(max_examples=50, deadline=None)
@given(k=st.one_of(st.just(0.0), st.floats(1e-3, 2), st.floats(-2, -1e-3)),
       frac=st.floats(0.05, 0.95), C=st.floats(-3, 3))
def test_higgs_first_integral_exact(k, frac, C):
    A = frac / math.sqrt(abs(k)) if k > 0 else frac * 2.0
    p = higgs(k)
    t = np.linspace(0, 20, 200)
    x, xd = classical.higgs_trajectory(A, p, t, C)
    eps = classical.first_integral(x, xd, p)
    # closed form: eps = Omega^2 A^2 with Omega^2 = omega0^2 / (1 - k A^2)
    expected = A * A / (1 - k * A * A)
    assert np.max(np.abs(eps - expected)) < 1e-11 * max(1.0, expected)


def test_higgs_rk4_matches_closed_form():
    p = higgs(0.3, 1.2)
    A = 1.1
    Om = classical.higgs_frequency(A, p)
    tr = classical.integrate_eom(p, 0.0, A * Om, 3 * 2 * math.pi / Om, 0.0025)
    x, _ = classical.higgs_trajectory(A, p, tr.t)
    assert np.max(np.abs(tr.x - x)) < 1e-8
    assert tr.max_relative_drift < 1e-10


def test_integrate_eom_lands_on_t_end():
    tr = classical.integrate_eom(higgs(0.1), 0.3, 0.0, 1.0, 0.3)
    assert tr.t[-1] == 1.0 and tr.t.size == 5


def test_integrate_eom_errors():
    with pytest.raises(DomainError):
        classical.integrate_eom(higgs(0.1), 0.0, 1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        classical.integrate_eom(higgs(-1.0), 2.0, 0.0, 1.0, 0.01)
    # a fast particle with a coarse step overshoots the edge |x| = 1/sqrt(|k|)
    with pytest.raises(DomainExitError):
        classical.integrate_eom(higgs(-1.0), 0.0, 50.0, 5.0, 0.05)


@settings(max_examples=20, deadline=None)
@given(k=st.floats(0.01, 2.0), frac=st.floats(0.05, 0.95), w0=st.floats(0.3, 3.0))
def test_v2_sn_and_landen_forms_agree(k, frac, w0):
    A = math.sqrt(frac / k)
    p = v2(k, w0)
    t = np.linspace(0, 30, 100)
    x1, v1 = classical.v2_trajectory(A, p, t, "sn")
    x2, v2_ = classical.v2_trajectory(A, p, t, "landen")
    assert np.max(np.abs(x1 - x2)) < 1e-10 * max(1.0, A)
    assert np.max(np.abs(v1 - v2_)) < 1e-9 * max(1.0, A * w0)


def test_v2_first_integral_and_period():
    k, A = 0.4, 1.2
    p = v2(k, 1.3)
    T = classical.v2_period(A, p)
    t = np.linspace(0, T, 400)
    x, xd = classical.v2_trajectory(A, p, t)
    eps = classical.first_integral(x, xd, p)
    assert np.ptp(eps) < 1e-12
    assert x[-1] == pytest.approx(x[0], abs=1e-10)
    tr = classical.integrate_eom(p, 0.0, xd[0], T, 1e-3)
    assert tr.x[-1] == pytest.approx(0.0, abs=1e-9)
    assert np.max(np.abs(tr.x - np.interp(tr.t, t, x))) < 1e-4


def test_v2_modulus_out_of_range():
    with pytest.raises(UnsupportedError):
        classical.v2_trajectory(2.0, v2(0.5), [0.0])
    with pytest.raises(ValueError):
        classical.v2_trajectory(1.0, v2(0.5), [0.0], form="bogus")


@pytest.mark.parametrize("k", [1e-2, 1e-3, 1e-4])
def test_small_k_limit_is_harmonic(k):
    t = np.linspace(0, 10, 200)
    for system, traj in ((higgs(k), classical.higgs_trajectory),
                         (v2(k), classical.v2_trajectory)):
        x = traj(1.0, system, t)[0]
        dev = np.max(np.abs(x - np.sin(t)))
        assert dev < 15 * k


def test_radial3d_first_integral():
    p = higgs(0.2, 1.0)
    C2, C3 = 0.4, 2.0
    consts = classical.Radial3DConstants.from_integrals(C2, C3, p)
    t = np.linspace(0, 2 * math.pi / consts.Omega, 300)
    r, rd = classical.radial3d_trajectory(consts, p, t, kappa=0.3)
    eps = classical.radial_first_integral(r, rd, C2, p)
    assert np.max(np.abs(eps - C3)) < 1e-8


def test_radial3d_constants_domain():
    with pytest.raises(DomainError):
        classical.Radial3DConstants.from_integrals(1.0, 0.5, higgs(0.1))


def test_trajectory_csv_is_17_digits():
    tr = classical.integrate_eom(higgs(0.1), 0.3, 0.0, 0.2, 0.1)
    lines = tr.to_csv().splitlines()
    assert lines[0] == "t,x,xdot,eps"
    assert len(lines) == 4
    assert float(lines[-1].split(",")[1]) == tr.x[-1]
