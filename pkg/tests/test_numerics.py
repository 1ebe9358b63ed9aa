import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial.transform import Rotation

from curvedfold.numerics import (
    arclength_inverse,
    derivative,
    fd_weights,
    periodic_reindex,
    regular_value_shifts,
    rigid_fit,
    rk4,
)


def test_fd_weights_first_derivative_central():
    w = fd_weights((-2, -1, 0, 1, 2), 1)
    assert np.allclose(w, [1 / 12, -2 / 3, 0, 2 / 3, -1 / 12])


@given(st.lists(st.floats(-3, 3), min_size=5, max_size=5), st.integers(1, 3))
def test_derivative_exact_on_quartics(coef, order):
    x = np.linspace(-1, 1, 41)
    p = np.polynomial.Polynomial(coef)
    got = derivative(p(x), x[1] - x[0], order)
    assert np.allclose(got, p.deriv(order)(x), atol=1e-7 * (1 + np.abs(coef).max()))


def test_derivative_fourth_order_convergence():
    errs = []
    for n in (64, 128):
        x = np.linspace(0, 2, n + 1)
        errs.append(np.abs(derivative(np.exp(x), x[1] - x[0]) - np.exp(x)).max())
    assert errs[0] / errs[1] > 12


def test_periodic_derivative():
    t = np.linspace(0, 2 * np.pi, 128, endpoint=False)
    assert np.abs(derivative(np.sin(3 * t), t[1], 1, periodic=True) - 3 * np.cos(3 * t)).max() < 1e-4


@given(st.floats(0, 64), st.sampled_from([1, -1]))
def test_periodic_reindex_matches_analytic(shift, sigma):
    n = 64
    t = 2 * np.pi * np.arange(n) / n
    y = np.cos(t) + 0.3 * np.sin(2 * t + 0.4)
    got = periodic_reindex(y, sigma, shift)
    u = sigma * t + 2 * np.pi * shift / n
    assert np.allclose(got, np.cos(u) + 0.3 * np.sin(2 * u + 0.4), atol=1e-12)


def test_rk4_exponential():
    y = rk4(lambda s, y: y, [1.0], 0.0, 0.01, 100)
    assert abs(y[-1, 0] - np.e) < 1e-9


@given(st.integers(0, 2**31 - 1), st.sampled_from([1, -1]))
def test_rigid_fit_recovers_motion(seed, det):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(30, 3))
    R = Rotation.random(random_state=seed).as_matrix()
    if det < 0:
        R = R @ np.diag([1, 1, -1])
    t = rng.normal(size=3)
    R2, t2, res = rigid_fit(X, X @ R.T + t)
    assert res < 1e-9
    assert np.allclose(R2, R, atol=1e-9) and np.allclose(t2, t, atol=1e-9)


def test_arclength_inverse_circle():
    c = lambda t: np.stack([np.cos(t), np.sin(t)], -1)
    dc = lambda t: np.stack([-np.sin(t), np.cos(t)], -1)
    t, total = arclength_inverse(c, dc, 0, 2 * np.pi, np.array([0.5, 1.0, 3.0]))
    assert abs(total - 2 * np.pi) < 1e-12
    assert np.allclose(t, [0.5, 1.0, 3.0], atol=1e-12)


def test_regular_value_shifts_finds_known_shift():
    n = 256
    h = 1.0 / n
    s = np.arange(n) * h
    f = np.cos(2 * np.pi * s) + 0.2 * np.sin(4 * np.pi * s + 0.3)
    g = periodic_reindex(f, 1, 0.3 / h)          # g(s) = f(s + 0.3)
    ds = regular_value_shifts(f, g, h, 1)        # g(s + d) = f(s)
    assert any(abs(((d + 0.3) % 1.0)) < 2 * h or abs(((d + 0.3) % 1.0) - 1) < 2 * h for d in ds)
