import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from deltah2.one_electron import (OneElectronState, alpha0, alpha0_excess, alpha0_prime, e_ub, e_ub_prime,
                                  f_exchange, f_exchange_alt, f_exchange_prime, phi0)
from deltah2.special import lambert_w0

half_distances = st.floats(min_value=0.0, max_value=20.0)


def _integrate(func, a, power):
    # split at the kinks so quad sees smooth pieces
    pts = sorted({-a, 0.0, a})
    edges = [-60.0, *pts, 60.0]
    return sum(quad(lambda z: func(z) ** power, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
               for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo)


def test_alpha0_examples():
    assert alpha0(0.0) == 2.0
    # 1 + 4e-44 rounds to 1.0; the excess over 1 is resolved separately
    assert 1.0 <= alpha0(50.0) < 1.001
    assert 0.0 < alpha0_excess(50.0) < 1e-3
    # 2 - 4a + 16a^2 + O(a^3); the 16a^2 term is 1.6e-3 here
    a = 0.01
    oracle = 1 + float(mpmath.lambertw(2 * mpmath.mpf(a) * mpmath.exp(-2 * mpmath.mpf(a))).real) / (2 * a)
    assert alpha0(a) == pytest.approx(oracle, abs=1e-14)
    assert abs(alpha0(a) - (2 - 4 * a)) <= 20 * a * a


def test_alpha0_series_matches_closed_form_at_cutoff():
    a = 1e-6
    series = 2 - 4 * a + 16 * a * a
    assert alpha0(a) == pytest.approx(series, abs=1e-12)
    assert alpha0(1.0000001e-6) == pytest.approx(alpha0(0.9999999e-6), abs=1e-11)


def test_negative_a_rejected():
    for func in (alpha0, alpha0_prime, f_exchange, OneElectronState.at):
        with pytest.raises(ValueError):
            func(-0.1)
    with pytest.raises(ValueError):
        e_ub(0.1, 0.0)


@settings(max_examples=200, deadline=None)
@given(half_distances, half_distances)
def test_alpha0_range_and_monotone(a1, a2):
    assert 1.0 <= alpha0(a1) <= 2.0
    assert 0.0 < alpha0_excess(a1) <= 1.0
    if a1 < a2 - 1e-9:
        assert alpha0_excess(a1) > alpha0_excess(a2)
        assert alpha0(a1) >= alpha0(a2)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-6, max_value=20.0))
def test_alpha0_transcendental_identity(a):
    # alpha = 1 + W/(2a) with W e^W = 2a e^{-2a}
    w = 2.0 * a * (alpha0(a) - 1.0)
    x = 2.0 * a * math.exp(-2.0 * a)
    assert abs(w * math.exp(w) - x) <= 1e-11 * max(1.0, x)
    # equivalently (alpha - 1) = e^{-2 a alpha}, the matching condition at the wells
    assert alpha0(a) - 1.0 == pytest.approx(math.exp(-2.0 * a * alpha0(a)), rel=1e-11)


def test_alpha0_prime_examples():
    assert alpha0_prime(0.0) == -4.0
    a, h = 0.3, 1e-5
    fd = (alpha0(a + h) - alpha0(a - h)) / (2 * h)
    assert alpha0_prime(a) == pytest.approx(fd, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.0, max_value=20.0))
def test_alpha0_prime_negative(a):
    assert alpha0_prime(a) < 0.0


@pytest.mark.parametrize("a", [0.0, 0.05, 0.3, 1.0, 4.0])
def test_phi0_normalized_and_continuous(a):
    s = OneElectronState.at(a)
    assert _integrate(s, a, 2) == pytest.approx(1.0, abs=1e-10)
    assert s.A1 * math.exp(-s.alpha0 * a) == pytest.approx(s.A2 * math.cosh(s.alpha0 * a),
                                                           rel=1e-12)


@pytest.mark.parametrize("a", [0.0, 0.2, 1.5])
def test_phi0_parity_and_jump_condition(a):
    s = OneElectronState.at(a)
    z = np.linspace(-5, 5, 101)
    assert np.allclose(phi0(s, z), phi0(s, -z), rtol=0, atol=1e-15)
    # derivative jump at -a: phi'(-a-) - phi'(-a+) = 2 phi(-a)
    left = s.alpha0 * s.A1 * math.exp(-s.alpha0 * a)
    right = -s.alpha0 * s.A2 * math.sinh(s.alpha0 * a)
    assert left - right == pytest.approx(2.0 * phi0(s, -a), abs=1e-8)


@pytest.mark.parametrize("a", [0.1, 0.7])
def test_phi0_solves_free_equation_on_pieces(a):
    s = OneElectronState.at(a)
    h = 1e-4
    for z in (0.3 * a, 2 * a + 0.5, -(a + 1.0)):
        d2 = (phi0(s, z + h) - 2 * phi0(s, z) + phi0(s, z - h)) / h**2
        assert -0.5 * d2 == pytest.approx(-0.5 * s.alpha0**2 * phi0(s, z), abs=1e-6)


def test_state_energy_and_call():
    s = OneElectronState.at(0.0)
    assert s.energy == -2.0
    assert s(0.0) == pytest.approx(math.sqrt(2.0))


def test_f_examples():
    assert f_exchange(0.0) == pytest.approx(1.0, abs=1e-15)
    s = OneElectronState.at(0.5)
    assert f_exchange(0.5) == pytest.approx(_integrate(s, 0.5, 4), abs=1e-8)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.0, max_value=150.0))
def test_f_two_forms_agree(a):
    assert abs(f_exchange(a) - f_exchange_alt(a)) <= 1e-12


def test_f_large_a_finite():
    assert f_exchange(1e4) == pytest.approx(0.25, abs=1e-6)


def test_f_below_half_alpha0():
    a = np.linspace(0.0, 5.0, 2001)
    f = np.array([f_exchange(x) for x in a])
    bound = 0.5 * np.array([alpha0(x) for x in a])
    assert f[0] == pytest.approx(bound[0], abs=1e-14)
    assert np.all(f[1:] < bound[1:])


@pytest.mark.parametrize("a", [0.0, 1e-7, 0.01, 0.25, 1.0, 3.0])
def test_f_prime_against_five_point_stencil(a):
    h = 1e-3
    if a < 2 * h:
        # one-sided second-order stencil at the boundary
        h = 1e-4
        fd = (-3 * f_exchange(a) + 4 * f_exchange(a + h) - f_exchange(a + 2 * h)) / (2 * h)
        assert f_exchange_prime(a) == pytest.approx(fd, abs=1e-5)
        return
    fd = (-f_exchange(a + 2 * h) + 8 * f_exchange(a + h) - 8 * f_exchange(a - h)
          + f_exchange(a - 2 * h)) / (12 * h)
    assert f_exchange_prime(a) == pytest.approx(fd, abs=1e-6)


def test_e_ub_examples():
    assert e_ub(0.0, 1) == -3.0
    assert e_ub(0.0, 2) == -3.5
    h = 1e-4
    assert (e_ub(h, 1) - e_ub(0.0, 1)) / h == pytest.approx(14.0, abs=0.1)
    assert e_ub_prime(0.0, 1) == pytest.approx(14.0, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.0, max_value=20.0), st.floats(min_value=1.0, max_value=100.0))
def test_e_ub_binds_below_one_electron_threshold(a, Z):
    assert e_ub(a, Z) < -0.5 * alpha0(a) ** 2
