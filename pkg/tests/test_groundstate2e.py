import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltah2.groundstate2e import (AccuracyNotReached, GridSpec, GridTooLarge,
                                   assemble_hamiltonian, e_electronic, e_prime_fh, e_prime_zero,
                                   extrapolate_energy, fh_convergence, ground_state, make_grid,
                                   read_eigenvector_csv, symmetric_basis, write_eigenvector_csv)
from deltah2.one_electron import alpha0, e_ub

NO_REPULSION = math.inf


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.0, max_value=3.0), st.sampled_from([0.05, 0.1, 0.2]))
def test_grid_contains_zero_and_wells(a, h):
    g = make_grid(a, h)
    z = g.nodes()
    assert g.box >= 12.0 - 1e-9
    assert np.allclose(z, -z[::-1], atol=1e-12)
    for target in (0.0, a, -a):
        assert np.min(np.abs(z - target)) <= 1e-12
    assert np.all(np.diff(z) > 0)
    assert np.max(np.diff(z)) <= h * (1 + 1e-9)
    assert g.a_snapped == a
    r = g.refined()
    assert set(np.round(z, 9)) <= set(np.round(r.nodes(), 9))


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(box=12.0, h=0.0, a=0.0, n_inner=0)
    with pytest.raises(ValueError):
        GridSpec(box=8.0, h=0.1, a=0.0, n_inner=0)
    with pytest.raises(ValueError):
        GridSpec(box=12.0, h=0.1, a=0.3, n_inner=3)
    with pytest.raises(ValueError):
        GridSpec(box=12.05, h=0.1, a=0.0, n_inner=0)
    with pytest.raises(GridTooLarge):
        assemble_hamiltonian(make_grid(0.0, 0.001), 1.0)
    with pytest.raises(ValueError):
        ground_state(0.2, 1.0, make_grid(0.3, 0.1))


@pytest.mark.parametrize("a, Z", [(0.0, 1.0), (0.3, 2.0), (0.4, NO_REPULSION)])
def test_hamiltonian_exactly_symmetric(a, Z):
    H = assemble_hamiltonian(make_grid(a, 0.2), Z)
    assert abs(H - H.T).max() == 0.0


def test_symmetric_basis_orthonormal():
    Q = symmetric_basis(7)
    assert np.allclose((Q.T @ Q).toarray(), np.eye(Q.shape[1]))
    v = np.arange(49.0).reshape(7, 7)
    v = v + v.T + v[::-1, ::-1] + v.T[::-1, ::-1]
    # invariant functions are reproduced by the projector
    assert np.allclose(Q @ (Q.T @ v.ravel()), v.ravel())


@pytest.fixture(scope="module")
def solve_01():
    return ground_state(0.1, 1.0, make_grid(0.1, 0.1))


def test_result_invariants(solve_01):
    res = solve_01
    assert res.residual <= 1e-8
    assert res.norm() == pytest.approx(1.0, abs=1e-12)
    psi = res.psi
    assert np.array_equal(psi, psi.T)
    assert np.allclose(psi, psi[::-1, ::-1], atol=1e-12)
    inner = psi[1:-1, 1:-1]
    assert np.all(inner > 0)
    assert np.all(psi[0] == 0) and np.all(psi[-1] == 0)
    # swap antisymmetrization annihilates the result
    assert np.max(np.abs(0.5 * (psi - psi.T))) == 0.0


def test_deterministic():
    g = make_grid(0.2, 0.2)
    assert ground_state(0.2, 1.0, g).energy == ground_state(0.2, 1.0, g).energy


@pytest.mark.parametrize("a", [0.0, 0.3])
def test_box_monotonicity(a):
    e10 = ground_state(a, 1.0, make_grid(a, 0.1, 10.0)).energy
    e12 = ground_state(a, 1.0, make_grid(a, 0.1, 12.0)).energy
    assert e12 <= e10 + 1e-6


def test_a0_value_between_bounds():
    e = e_electronic(0.0, 1.0)
    assert -4.0 < e <= -3.0


@pytest.mark.parametrize("a", [0.0, 0.5])
def test_non_interacting_oracle(a):
    res = extrapolate_energy(a, NO_REPULSION)
    assert res.value == pytest.approx(-alpha0(a) ** 2, abs=2e-3)
    assert res.error <= 5e-3


@pytest.mark.parametrize("a", [0.0, 0.5])
def test_second_order_convergence(a):
    e = extrapolate_energy(a, 1.0).energies[-3:]
    ratio = (e[0] - e[1]) / (e[1] - e[2])
    assert 3.4 <= ratio <= 4.6


@pytest.mark.parametrize("a", [0.1, 0.5, 1.0])
def test_sandwich_and_binding(a):
    e = e_electronic(a, 1.0)
    assert -alpha0(a) ** 2 - 5e-3 <= e <= e_ub(a, 1.0) + 5e-3
    assert e < -0.5 * alpha0(a) ** 2


def test_accuracy_contract():
    with pytest.raises(ValueError):
        e_electronic(0.1, 1.0, accuracy=1e-4)
    with pytest.raises(AccuracyNotReached):
        extrapolate_energy(0.0, NO_REPULSION, accuracy=1e-3, h=0.4, h_min=0.2)


@pytest.mark.parametrize("a", [0.05, 0.2, 0.3116])
def test_fh_positive_on_monotone_interval(a):
    assert e_prime_fh(a, 1.0, make_grid(a, 0.05)) > 0


def test_fh_matches_finite_difference_one_electron_limit():
    # no repulsion: e(a) = -alpha0(a)^2 exactly, so e'(a) = -2 alpha0 alpha0'
    from deltah2.one_electron import alpha0_prime
    a = 0.3
    val = e_prime_fh(a, NO_REPULSION, make_grid(a, 0.025))
    assert val == pytest.approx(-2 * alpha0(a) * alpha0_prime(a), rel=1e-2)


def test_fh_convergence_reports_order():
    spacings, values, order = fh_convergence(0.2, 1.0, h=0.2, levels=3)
    assert spacings == [0.2, 0.1, 0.05]
    assert 1.0 < order < 3.0
    assert values[-1] > 0


@pytest.mark.parametrize("Z", [1.0, 2.0])
def test_e_prime_zero_positive_and_bounded(Z):
    d = e_prime_zero(Z)
    assert d > 0
    assert d >= -2.0 * e_electronic(0.0, Z) - 1e-2


def test_e_prime_zero_methods_agree():
    trace = e_prime_zero(1.0, "trace", h=0.1)
    fh0 = e_prime_zero(1.0, "fh0", h=0.1)
    assert fh0 == pytest.approx(trace, rel=1e-2)
    # the straight-line fit undershoots because e' bends near 0
    linear = e_prime_zero(1.0, "linear", h=0.1)
    assert 0 < linear < trace
    with pytest.raises(KeyError):
        e_prime_zero(1.0, "spline")


def test_eigenvector_csv_round_trip(tmp_path, solve_01):
    path = tmp_path / "psi.csv"
    write_eigenvector_csv(solve_01, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    header, nodes, psi = read_eigenvector_csv(path)
    assert header == {"box": solve_01.grid.box, "h": 0.1, "a_snapped": 0.1, "Z": 1.0,
                      "energy": solve_01.energy}
    assert np.array_equal(nodes, solve_01.nodes)
    assert np.array_equal(psi, solve_01.psi)
