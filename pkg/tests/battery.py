"""Shared strip fixtures: planar / non-planar creases with and without symmetric kappa and mu."""

from functools import lru_cache

import numpy as np

from curvedfold.builtins import (
    arctan_curve,
    ellipse_curvature_by_arclength,
    helix,
    perturbed_helix,
    quarter_circle,
    torus_curve,
)
from curvedfold.curves import curve_from_kappa_tau, sample_parametric
from curvedfold.strip import build_strip

L = 2.0


def _const(c):
    return lambda s: c + 0 * np.asarray(s, dtype=float)


def _alpha_for_mu(crease, m):
    """alpha realizing a prescribed mu profile on the crease."""
    return np.arccos(m(crease.s) / crease.kappa)


def _mu_sym(crease):
    k0 = crease.kappa.min()
    return lambda s: 0.5 * k0 * (1 + 0.1 * s**2)


ALPHA_ASYM = lambda s: 1.0 + 0.2 * s

# name -> (kappa, tau, mu symmetric?, expected N, expected case)
SPECS = {
    "planar_ksym_muasym": (lambda s: 1 + 0.3 * s**2, _const(0.0), False, 1, "B3a_planar_nontrivial"),
    "planar_ksym_musym": (lambda s: 1 + 0.3 * s**2, _const(0.0), True, 1, "B3a_planar_nontrivial"),
    "planar_kasym_muasym": (lambda s: 1.2 + 0.3 * s, _const(0.0), False, 2, "B2_le_two"),
    "planar_kasym_musym": (lambda s: 1.2 + 0.3 * s, _const(0.0), True, 1, "B3b_planar_mu_sym"),
    "pos_sym_muasym": (lambda s: 1 + 0.2 * s**2, lambda s: 0.5 + 0.1 * s**2, False, 2, "B2_le_two"),
    "pos_sym_musym": (lambda s: 1 + 0.2 * s**2, lambda s: 0.5 + 0.1 * s**2, True, 1, "B3c_positive_sym_mu_sym"),
    "neg_sym_muasym": (lambda s: 1 + 0.2 * s**2, lambda s: 0.4 * s, False, 2, "B2_le_two"),
    "neg_sym_musym": (lambda s: 1 + 0.2 * s**2, lambda s: 0.4 * s, True, 2, "B2_le_two"),
    "nosym_ksym_muasym": (lambda s: 1 + 0.2 * s**2, lambda s: 0.5 + 0.3 * s, False, 4, "B1_no_symmetries"),
    "nosym_ksym_musym": (lambda s: 1 + 0.2 * s**2, lambda s: 0.5 + 0.3 * s, True, 2, "B2_le_two"),
    "nosym_kasym_muasym": (lambda s: 1.2 + 0.3 * s, _const(0.5), False, 4, "B1_no_symmetries"),
    "nosym_kasym_musym": (lambda s: 1.2 + 0.3 * s, _const(0.5), True, 2, "B2_le_two"),
}

NAMED_FIXTURES = {
    "helix": (1, "B3c_positive_sym_mu_sym"),
    "quarter_circle": (1, "B3a_planar_nontrivial"),
    "arctan_curve": (4, "B1_no_symmetries"),
    "perturbed_helix": (4, "B1_no_symmetries"),
}

EXPECTED = {k: (v[3], v[4]) for k, v in SPECS.items()}
EXPECTED.update(NAMED_FIXTURES)
NAMES = tuple(EXPECTED)


@lru_cache(maxsize=None)
def strip(name, n=2048):
    if name in SPECS:
        kappa, tau, musym, _, _ = SPECS[name]
        c = curve_from_kappa_tau(kappa, tau, L, n=n)
        alpha = _alpha_for_mu(c, _mu_sym(c)) if musym else ALPHA_ASYM
        return build_strip(c, alpha)
    if name == "helix":
        return build_strip(helix(n=n), np.pi / 4)
    if name == "quarter_circle":
        return build_strip(quarter_circle(n=n), lambda s: np.pi / 4 - s / 2)
    if name == "arctan_curve":
        return build_strip(arctan_curve(n=n), lambda s: np.pi * (s + 10) / 24)
    if name == "perturbed_helix":
        return build_strip(perturbed_helix(0.1, n=n), np.pi / 3)
    raise KeyError(name)


@lru_cache(maxsize=None)
def torus_strip(n=2048):
    C = torus_curve(3, n=n)
    mu, k = ellipse_curvature_by_arclength(1.2, len(C.s), C.length)
    return build_strip(C, np.arccos(mu / C.kappa)), k


def _generic_closed(t):
    r = 2 + np.cos(3 * t) + 0.3 * np.sin(2 * t)
    return np.stack([r * np.cos(t), r * np.sin(t), np.sin(3 * t) + 0.4 * np.cos(2 * t + 1)], -1)


def _generic_closed_d(t):
    r = 2 + np.cos(3 * t) + 0.3 * np.sin(2 * t)
    dr = -3 * np.sin(3 * t) + 0.6 * np.cos(2 * t)
    return np.stack([dr * np.cos(t) - r * np.sin(t), dr * np.sin(t) + r * np.cos(t),
                     3 * np.cos(3 * t) - 0.8 * np.sin(2 * t + 1)], -1)


@lru_cache(maxsize=None)
def generic_closed_strip(n=1024):
    """Closed crease and mu without any symmetry."""
    C = sample_parametric(_generic_closed, _generic_closed_d, 0.0, 2 * np.pi, n, closed=True)
    x = 2 * np.pi * C.s / C.length
    mu = 0.5 * C.kappa.min() * (1 + 0.25 * np.cos(x) + 0.15 * np.sin(2 * x + 0.7))
    return build_strip(C, np.arccos(mu / C.kappa))
