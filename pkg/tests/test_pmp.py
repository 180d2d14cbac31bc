import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dubins_pair.model import Weights, dynamics_rhs, running_cost
from dubins_pair.pmp import (
    Costate,
    ExtendedState,
    adjoint_rhs,
    closed_loop_rhs,
    hamiltonian,
    optimal_control,
    stationarity_residual,
)

from conftest import random_pair

FD_STEP = 1e-6


def random_inputs(seed, count):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        s = random_pair(rng, min_gap=np.sqrt(0.1))
        p = rng.uniform(-2, 2, 6)
        c = rng.uniform(-2, 2, 4)
        w = Weights(*rng.uniform(0.2, 2, 4))
        yield s, p, c, w


def central_difference(fun, x, i):
    xp, xm = x.copy(), x.copy()
    xp[i] += FD_STEP
    xm[i] -= FD_STEP
    return (fun(xp) - fun(xm)) / (2 * FD_STEP)


def close(a, b, rel=1e-6):
    # relative error, with an absolute floor for components that vanish
    return abs(a - b) <= rel * max(abs(b), 1e-2)


def test_hamiltonian_examples():
    w = Weights(delta=1, beta=0.4, alpha=0.1, rho=0.6)
    s = np.array([1, 0, 0, 0, 0, 0.0])
    assert hamiltonian(s, np.zeros(6), np.zeros(4), w) == pytest.approx(-0.5 * (0.4 + 0.6))
    w = Weights(delta=1, beta=0, alpha=0, rho=0)
    assert hamiltonian(s, Costate(p3=2), np.array([0, 3, 0, 0.0]), w) == pytest.approx(1.5)


def test_hamiltonian_is_inner_product_minus_running_cost():
    for s, p, c, w in random_inputs(1, 100):
        expected = p @ dynamics_rhs(s, c) - running_cost(s, c, w)
        assert hamiltonian(s, p, c, w) == pytest.approx(expected, rel=1e-13, abs=1e-13)


def test_optimal_control_examples():
    s = np.array([0, 0, 0, 5, 5, 0.0])
    u = optimal_control(s, Costate(p2=3), Weights(delta=2))
    assert u.u1 == pytest.approx(1.5)
    assert optimal_control(s, Costate(p3=4), Weights(delta=2)).u2 == 2.0
    assert optimal_control(s, Costate(), Weights()).to_array().tolist() == [0.0] * 4


def test_adjoint_examples():
    s = np.array([1, 0, 0, 0, 0, 0.0])
    zero = adjoint_rhs(s, np.zeros(6), np.zeros(4), Weights(beta=0, alpha=0, rho=0))
    assert not np.any(zero)
    out = adjoint_rhs(s, np.zeros(6), np.zeros(4), Weights(beta=1, alpha=0, rho=0))
    np.testing.assert_array_equal(out, [1, 0, 0, 0, 0, 0])


def test_adjoint_is_minus_state_gradient_of_hamiltonian():
    for s, p, c, w in random_inputs(2, 200):
        got = adjoint_rhs(s, p, c, w)
        for i in range(6):
            fd = central_difference(lambda x: hamiltonian(x, p, c, w), s, i)
            assert close(got[i], -fd), (i, got[i], -fd)


def test_stationarity_is_control_gradient_of_hamiltonian():
    for s, p, c, w in random_inputs(3, 200):
        got = stationarity_residual(s, p, c, w)
        for i in range(4):
            fd = central_difference(lambda u: hamiltonian(s, p, u, w), c, i)
            assert close(got[i], fd), (i, got[i], fd)


def test_stationarity_examples():
    s = np.array([0.3, 0.1, 0.7, 4, 2, -1.0])
    np.testing.assert_array_equal(stationarity_residual(s, np.zeros(6), [1, 0, 0, 0], Weights(delta=2)),
                                  [-2, 0, 0, 0])
    for s, p, _, w in random_inputs(4, 20):
        u = optimal_control(s, p, w)
        np.testing.assert_allclose(stationarity_residual(s, p, u, w), 0, atol=1e-14)


def test_closed_loop_is_composition():
    for s, p, _, w in random_inputs(5, 100):
        u = optimal_control(s, p, w)
        expected = np.r_[dynamics_rhs(s, u), adjoint_rhs(s, p, u, w)]
        np.testing.assert_array_equal(closed_loop_rhs(np.r_[s, p], w), expected)


def test_closed_loop_examples():
    s = np.array([1, 2, 0.3, 5, 1, -0.4])
    w = Weights(delta=1.7)
    assert not np.any(closed_loop_rhs(np.r_[s, np.zeros(6)], w)[:6])
    ext = ExtendedState.from_array(np.r_[s, 0, 0, w.delta, 0, 0, 0])
    assert closed_loop_rhs(ext, w)[2] == pytest.approx(1.0)


controls = st.lists(st.floats(-20, 20), min_size=4, max_size=4).map(np.array)


@given(controls, st.integers(0, 10_000))
def test_optimal_control_maximizes_hamiltonian(c, seed):
    s, p, _, w = next(random_inputs(seed, 1))
    best = hamiltonian(s, p, optimal_control(s, p, w), w)
    assert hamiltonian(s, p, c, w) <= best + 1e-12


@given(st.integers(0, 10_000))
def test_swap_commutes_with_every_operation(seed):
    s, p, c, w = next(random_inputs(seed, 1))
    ss, ps, cs, ws = np.r_[s[3:], s[:3]], np.r_[p[3:], p[:3]], np.r_[c[2:], c[:2]], w.swapped()
    assert hamiltonian(ss, ps, cs, ws) == pytest.approx(hamiltonian(s, p, c, w), rel=1e-13, abs=1e-14)
    np.testing.assert_allclose(optimal_control(ss, ps, ws).to_array(), optimal_control(s, p, w).swapped().to_array())
    a, b = adjoint_rhs(ss, ps, cs, ws), adjoint_rhs(s, p, c, w)
    np.testing.assert_allclose(a, np.r_[b[3:], b[:3]], rtol=1e-13, atol=1e-14)
    r, q = stationarity_residual(ss, ps, cs, ws), stationarity_residual(s, p, c, w)
    np.testing.assert_allclose(r, np.r_[q[2:], q[:2]], rtol=1e-13, atol=1e-14)
