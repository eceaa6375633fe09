import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reentrant_casimir.constants import C, ev_to_angular_frequency, first_matsubara_frequency
from reentrant_casimir.errors import DomainError
from reentrant_casimir.materials import EMPTY, PERFECT, builtin_material, drude
from reentrant_casimir.reflection import fresnel_te, fresnel_tm, wave_numbers, zero_frequency_limits

EV = ev_to_angular_frequency(1.0)
AU = builtin_material("Au")


def test_vacuum_and_perfect_conductor():
    assert fresnel_te(EMPTY, EV, 1e6) == 0.0
    assert fresnel_tm(EMPTY, EV, 1e6) == 0.0
    assert fresnel_te(PERFECT, EV, 1e6) == -1.0
    assert fresnel_tm(PERFECT, EV, 1e6) == 1.0


def test_gold_example():
    # k_perp = xi/c so q = sqrt(2) xi/c; mpmath values
    xi = EV
    assert fresnel_te(AU, xi, xi / C) == pytest.approx(-0.7273294440865024, rel=1e-12)
    assert fresnel_tm(AU, xi, xi / C) == pytest.approx(0.8519818960397094, rel=1e-12)


def test_k_perp_must_be_positive():
    with pytest.raises(DomainError):
        fresnel_te(AU, EV, 0.0)
    with pytest.raises(DomainError):
        fresnel_tm(AU, EV, -1.0)


@pytest.mark.parametrize("m, expected", [(AU, (0.0, 1.0)), (PERFECT, (-1.0, 1.0)), (EMPTY, (0.0, 0.0))])
def test_zero_frequency_limits(m, expected):
    assert zero_frequency_limits(m) == expected


@pytest.mark.parametrize("name", ["Au", "Nb"])
def test_zero_frequency_limit_numerically(name):
    m = builtin_material(name)
    xi = 1e-6 * m.drude.gamma
    te0, tm0 = zero_frequency_limits(m)
    assert abs(fresnel_te(m, xi, 1e6) - te0) < 1e-3
    assert abs(fresnel_tm(m, xi, 1e6) - tm0) < 1e-3


@pytest.mark.parametrize("name", ["Au", "Nb", "Al"])
def test_te_approaches_zero_linearly_in_xi(name):
    # r_TE ~ -Omega^2 xi / (4 gamma c^2 k^2); Al sits at 1.08e-3 for xi = 1e-6 gamma
    m = builtin_material(name)
    k = 1e6
    r = [abs(fresnel_te(m, f * m.drude.gamma, k)) for f in (1e-6, 1e-7, 1e-8)]
    assert r[0] < 2e-3
    assert r[1] == pytest.approx(r[0] / 10, rel=5e-3)
    assert r[2] == pytest.approx(r[1] / 10, rel=5e-4)
    assert abs(fresnel_tm(m, 1e-8 * m.drude.gamma, k) - 1) < 1e-6


def test_xi_zero_uses_limits():
    assert fresnel_te(AU, 0.0, 1e6) == 0.0
    assert fresnel_tm(AU, 0.0, 1e6) == 1.0
    out = fresnel_tm(AU, np.array([0.0, EV]), 1e6)
    assert out[0] == 1.0 and 0 < out[1] < 1


def test_wave_number_invariants():
    xi = np.geomspace(1e12, 1e17, 7)
    k = np.geomspace(1.0, 1e10, 7)
    w = wave_numbers(AU, xi[:, None], k[None, :])
    assert np.all(w.q >= w.k_perp)
    assert np.all(w.q >= w.xi / C)
    assert np.all(w.s > w.q)


def test_large_plasma_frequency_tends_to_perfect_conductor():
    m = drude("stiff", 1e4, 0.035)
    xi = EV
    assert abs(fresnel_te(m, xi, xi / C) + 1) < 1e-3
    assert abs(fresnel_tm(m, xi, xi / C) - 1) < 1e-3


@pytest.mark.parametrize("name", ["Au", "Nb", "Al"])
def test_no_nan_on_wide_grid(name):
    m = builtin_material(name)
    xi1 = first_matsubara_frequency(300)
    xi = np.geomspace(xi1, 1e3 * xi1, 40)[:, None]
    k = np.geomspace(1.0, 1e10, 400)[None, :]
    te, tm = fresnel_te(m, xi, k), fresnel_tm(m, xi, k)
    assert np.all(np.isfinite(te)) and np.all(np.isfinite(tm))
    assert np.all((-1 < te) & (te < 0))
    assert np.all((0 < tm) & (tm < 1))


@settings(max_examples=200)
@given(st.sampled_from(["Au", "Nb", "Al"]), st.floats(1e11, 1e18), st.floats(1e-2, 1e10))
def test_drude_coefficient_ranges(name, xi, k):
    m = builtin_material(name)
    assert -1 < fresnel_te(m, xi, k) <= 0
    assert 0 <= fresnel_tm(m, xi, k) < 1
