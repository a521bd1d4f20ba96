import math

import pytest
from hypothesis import given, settings, strategies as st

from pdmosc import semiclassical as sc
from pdmosc.errors import DomainError, LevelUnreachableError
from pdmosc.params import SystemParams


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 30), w0=st.floats(0.1, 10), hbar=st.floats(0.1, 3))
def test_higgs_harmonic_limit(n, w0, hbar):
    p = SystemParams(0.0, w0, hbar)
    assert sc.higgs_semiclassical_energy(n, p) == (n + 0.5) * hbar * w0
    assert sc.higgs3d_semiclassical_energy(n, 2, p) == (2 * n + 3.5) * hbar * w0


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 30), k=st.floats(-1, 1), w0=st.floats(0.1, 10))
def test_higgs_level_spacing_linear(n, k, w0):
    p = SystemParams(k, w0)
    gap = sc.higgs_semiclassical_energy(n + 1, p) - sc.higgs_semiclassical_energy(n, p)
    assert gap == pytest.approx(w0 + (n + 1) * k, rel=1e-12, abs=1e-12)


def test_higgs_negative_n():
    with pytest.raises(DomainError):
        sc.higgs_semiclassical_energy(-1, SystemParams(0.1))
    with pytest.raises(DomainError):
        sc.higgs3d_semiclassical_energy(0, -1, SystemParams(0.1))


def test_v2_quantization_residual():
    p = SystemParams(0.1, 5.0, potential="v2")
    levels = sc.v2_semiclassical_spectrum(5, p)
    assert [lv.n for lv in levels] == list(range(6))
    for lv in levels:
        act = sc.v2_action(lv.amplitude_or_modulus, p)
        assert abs(act.quadrature - 2 * math.pi * (lv.n + 0.5)) < 1e-9
    energies = [lv.energy for lv in levels]
    assert energies == sorted(energies)


def test_v2_action_discrepancy_is_reported():
    act = sc.v2_action(0.3, SystemParams(0.1, 5.0, potential="v2"))
    assert act.discrepancy == act.closed_form - act.quadrature
    # the elliptic closed form does not reproduce the loop integral
    assert abs(act.discrepancy) > 1.0
    assert act.quadrature > 0


def test_v2_small_k_converges_linearly():
    devs = []
    for k in (1e-2, 1e-3, 1e-4):
        levels = sc.v2_semiclassical_spectrum(2, SystemParams(k, 1.0, potential="v2"))
        devs.append(max(abs(lv.energy - (lv.n + 0.5)) for lv in levels))
    assert devs[0] < 0.1
    assert devs[1] / devs[0] == pytest.approx(0.1, rel=0.05)
    assert devs[2] / devs[1] == pytest.approx(0.1, rel=0.05)


def test_v2_levels_above_barrier():
    # max action is omega0 / k = 10 < 2 pi (2 + 1/2)
    with pytest.raises(LevelUnreachableError):
        sc.v2_semiclassical_spectrum(3, SystemParams(0.1, 1.0, potential="v2"))


def test_v2_requires_positive_k():
    with pytest.raises(DomainError):
        sc.v2_semiclassical_spectrum(1, SystemParams(-0.1, potential="v2"))
    with pytest.raises(DomainError):
        sc.v2_action(1.2, SystemParams(0.1, potential="v2"))
