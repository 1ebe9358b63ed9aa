"""Registry of analytic example curves and the angular data that goes with them."""

from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

from .config import DEFAULT_N
from .curves import SpaceCurve, sample_parametric
from .numerics import arclength_inverse

SQ2 = np.sqrt(2.0)


def _stack(*cols):
    return np.stack(np.broadcast_arrays(*cols), axis=-1)


def helix(l=4.0, n=DEFAULT_N):
    """``(cos(s/sqrt2), sin(s/sqrt2), s/sqrt2)`` on ``|s| <= l/2``; kappa = tau = 1/2."""
    c = lambda s: _stack(np.cos(s / SQ2), np.sin(s / SQ2), s / SQ2)
    dc = lambda s: _stack(-np.sin(s / SQ2) / SQ2, np.cos(s / SQ2) / SQ2, 1 / SQ2 + 0 * s)
    return sample_parametric(c, dc, -l / 2, l / 2, n)


def arctan_curve(t0=0.1, t1=0.9, n=DEFAULT_N):
    """``(arctan t, log(1+t^2)/sqrt2, t - arctan t)``, already unit speed; ``origin`` is the midpoint t."""
    c = lambda t: _stack(np.arctan(t), np.log1p(t * t) / SQ2, t - np.arctan(t))
    dc = lambda t: _stack(1 / (1 + t * t), SQ2 * t / (1 + t * t), t * t / (1 + t * t))
    return sample_parametric(c, dc, t0, t1, n, origin=(t0 + t1) / 2)


def perturbed_helix(d=0.1, t0=3 * np.pi / 8, t1=5 * np.pi / 8, n=DEFAULT_N):
    """``(cos t, sin(t + d), t)``."""
    c = lambda t: _stack(np.cos(t), np.sin(t + d), t)
    dc = lambda t: _stack(-np.sin(t), np.cos(t + d), 1 + 0 * t)
    return sample_parametric(c, dc, t0, t1, n)


def perturbed_helix_kappa(t, d):
    """Closed-form curvature of :func:`perturbed_helix` in its native parameter."""
    num = 3 + np.cos(2 * d) + np.cos(2 * t) - np.cos(2 * t + 2 * d)
    den = 2 * (1 + np.sin(t) ** 2 + np.cos(t + d) ** 2) ** 3
    return np.sqrt(num / den)


def perturbed_helix_kappa_of_s(d=0.1, t0=3 * np.pi / 8, t1=5 * np.pi / 8, n=4096):
    """Curvature of the perturbed helix as a function of centred arc length (cubic spline)."""
    from scipy.interpolate import CubicSpline

    c = lambda t: _stack(np.cos(t), np.sin(t + d), t)
    dc = lambda t: _stack(-np.sin(t), np.cos(t + d), 1 + 0 * t)
    _, total = arclength_inverse(c, dc, t0, t1, np.array([0.0]))
    s = np.linspace(0, total, n + 1)
    t, _ = arclength_inverse(c, dc, t0, t1, s)
    return CubicSpline(s - total / 2, perturbed_helix_kappa(t, d)), total


def torus_curve(m=3, n=DEFAULT_N):
    """``((2 + cos mt) cos t, (2 + cos mt) sin t, sin mt)``, closed."""
    def c(t):
        r = 2 + np.cos(m * t)
        return _stack(r * np.cos(t), r * np.sin(t), np.sin(m * t))

    def dc(t):
        r = 2 + np.cos(m * t)
        dr = -m * np.sin(m * t)
        return _stack(dr * np.cos(t) - r * np.sin(t), dr * np.sin(t) + r * np.cos(t), m * np.cos(m * t))

    return sample_parametric(c, dc, 0.0, 2 * np.pi, n, closed=True)


def trochoid(t0=0.0, t1=2 * np.pi, n=DEFAULT_N, planar=False):
    """``(2t/3 - sin t, 1 - cos t)`` in the plane z = 0 (or as a plane curve)."""
    if planar:
        c = lambda t: _stack(2 * t / 3 - np.sin(t), 1 - np.cos(t))
        dc = lambda t: _stack(2 / 3 - np.cos(t), np.sin(t))
    else:
        c = lambda t: _stack(2 * t / 3 - np.sin(t), 1 - np.cos(t), 0 * t)
        dc = lambda t: _stack(2 / 3 - np.cos(t), np.sin(t), 0 * t)
    return sample_parametric(c, dc, t0, t1, n)


def ellipse(a=1.2, n=DEFAULT_N, planar=False):
    """``(cos t, a sin t)``, closed, starting at (1, 0)."""
    if planar:
        c = lambda t: _stack(np.cos(t), a * np.sin(t))
        dc = lambda t: _stack(-np.sin(t), a * np.cos(t))
    else:
        c = lambda t: _stack(np.cos(t), a * np.sin(t), 0 * t)
        dc = lambda t: _stack(-np.sin(t), a * np.cos(t), 0 * t)
    return sample_parametric(c, dc, 0.0, 2 * np.pi, n, closed=True)


def ellipse_curvature_by_arclength(a, n, length=None):
    """Exact curvature of ``(cos t, a sin t)`` at ``n`` equal arc-length steps from t = 0.

    If ``length`` is given the ellipse is first scaled to that length.
    Returns ``(mu, scale)``.
    """
    c = lambda t: _stack(np.cos(t), a * np.sin(t))
    dc = lambda t: _stack(-np.sin(t), a * np.cos(t))
    _, total = arclength_inverse(c, dc, 0.0, 2 * np.pi, np.array([0.0]))
    t, _ = arclength_inverse(c, dc, 0.0, 2 * np.pi, np.arange(n) * total / n)
    mu = a * (np.sin(t) ** 2 + a * a * np.cos(t) ** 2) ** -1.5
    k = 1.0 if length is None else length / total
    return mu / k, k


def quarter_circle(n=DEFAULT_N):
    """``(cos s, sin s, 0)`` on ``|s| <= pi/4``."""
    c = lambda s: _stack(np.cos(s), np.sin(s), 0 * s)
    dc = lambda s: _stack(-np.sin(s), np.cos(s), 0 * s)
    return sample_parametric(c, dc, -np.pi / 4, np.pi / 4, n)


def circle(r=1.0, n=DEFAULT_N):
    """Round circle of radius ``r``, closed."""
    c = lambda t: _stack(r * np.cos(t), r * np.sin(t), 0 * t)
    dc = lambda t: _stack(-r * np.sin(t), r * np.cos(t), 0 * t)
    return sample_parametric(c, dc, 0.0, 2 * np.pi, n, closed=True)


@dataclass(frozen=True)
class Example:
    name: str
    build: Callable
    params: Dict
    alpha: str
    anchor: str


EXAMPLES = {
    e.name: e for e in [
        Example("helix", helix, {"l": 4.0}, "const(pi/4)",
                "unit-speed helix, kappa = tau = 1/2; the dual is the half-turn of F about the normal line at s = 0"),
        Example("arctan_curve", arctan_curve, {"t0": 0.1, "t1": 0.9}, "linear(pi/24, 10pi/24)",
                "non-planar curve with kappa = tau = sqrt2/(1+s^2) on [1/10, 9/10]; four non-congruent isomers"),
        Example("perturbed_helix", perturbed_helix, {"d": 0.1}, "const(pi/3)",
                "(cos t, sin(t+d), t) on [3pi/8, 5pi/8]; kappa' < 0 for small d, admissible for d <= pi/5"),
        Example("torus_curve", torus_curve, {"m": 3}, "ellipse_mu(1.2)",
                "closed curve on a torus of revolution; min kappa_m > 2pi/L_m; generator an ellipse of the same length"),
        Example("trochoid", trochoid, {"t0": 0.0, "t1": 2 * np.pi}, "const(pi/4)",
                "(2t/3 - sin t, 1 - cos t); the arc over [0, 2pi] is simple, the arc over [pi, 3pi] is not"),
        Example("ellipse", ellipse, {"a": 1.2}, "const(pi/4)",
                "(cos t, a sin t) with curvature a (sin^2 t + a^2 cos^2 t)^(-3/2)"),
        Example("quarter_circle", quarter_circle, {}, "linear(-1/2, pi/4)",
                "unit quarter circle on |s| <= pi/4 with alpha = pi/4 - s/2; reflection y -> -y is a negative symmetry"),
        Example("circle", circle, {"r": 1.0}, "const(pi/4)",
                "unit circle; alpha = pi/4 develops to an arc of radius sqrt2 and length 2pi"),
    ]
}


def build_example(name, n=DEFAULT_N, **params) -> SpaceCurve:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; known: {sorted(EXAMPLES)}")
    ex = EXAMPLES[name]
    unknown = set(params) - set(ex.params)
    if unknown:
        raise KeyError(f"unknown parameter(s) for {name}: {sorted(unknown)}")
    kw = dict(ex.params)
    kw.update(params)
    return ex.build(n=n, **kw)
