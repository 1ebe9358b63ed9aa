import numpy as np
import pytest
from hypothesis import given, strategies as st

from curvedfold.analysis import band_hausdorff, strip_mu_symmetry
from curvedfold.builtins import arctan_curve, helix, torus_curve
from curvedfold.config import DEFAULT_TOL
from curvedfold.curves import curve_from_kappa_tau, reverse_curve
from curvedfold.errors import (
    IncompatibleCurve,
    NotAdmissible,
    NotClosed,
    TorusDomain,
    UnsupportedSignChange,
)
from curvedfold.isomers import (
    closed_family,
    count_classes,
    dual,
    inverse,
    inverse_dual,
    isomer_quartet,
    reindex_strip,
    reverse_strip,
    right_equivalent,
    transplant,
)
from curvedfold.numerics import periodic_reindex
from curvedfold.strip import build_strip

from battery import NAMES, strip, torus_strip

TOL = DEFAULT_TOL


@pytest.mark.parametrize("name", NAMES)
def test_dual_involution(name):
    F = strip(name)
    G = dual(dual(F))
    assert np.array_equal(G.alpha, F.alpha)
    assert np.array_equal(G.mu, F.mu)
    assert np.abs(G.xi - F.xi).max() < 1e-12


@pytest.mark.parametrize("name", NAMES)
def test_reverse_involution(name):
    F = strip(name)
    G = reverse_strip(reverse_strip(F))
    assert np.array_equal(G.alpha, F.alpha)
    assert np.array_equal(G.mu, F.mu)
    assert np.array_equal(G.crease.points, F.crease.points)
    assert np.abs(G.xi - F.xi).max() < 1e-12


@pytest.mark.parametrize("name", NAMES)
def test_mu_preserved_across_quartet(name):
    q = isomer_quartet(strip(name))
    for g in q.members:
        assert np.array_equal(g.mu, q.f.mu)
    assert np.array_equal(reverse_strip(q.f).mu[::-1], q.f.mu)


@pytest.mark.parametrize("name", NAMES)
def test_inverse_angle_relation(name):
    F = strip(name)
    Fi = inverse(F)
    k = F.crease.kappa
    # kappa(-u) cos alpha_inv(u) = kappa(u) cos alpha(u)
    assert np.abs(k[::-1] * np.cos(Fi.alpha) - k * np.cos(F.alpha)).max() < TOL.beta
    assert np.all(Fi.alpha * F.alpha > 0)
    assert np.array_equal(inverse_dual(F).alpha, -Fi.alpha)
    assert Fi.beta_residual().max() < TOL.beta


def test_transplant_same_curve_negative_is_dual():
    F = strip("arctan_curve")
    G = transplant(F, F.crease, -1)
    D = dual(F)
    assert np.abs(G.alpha - D.alpha).max() < 1e-12
    assert np.array_equal(G.mu, F.mu)


def test_transplant_reverse_positive_is_inverse():
    F = strip("nosym_kasym_muasym")
    G = transplant(F, reverse_curve(F.crease), 1)
    assert np.array_equal(G.alpha, inverse(F).alpha)


def test_transplant_incompatible_reports_worst_point():
    F = build_strip(helix(), np.pi / 6)           # mu = cos(pi/6)/2 ~ 0.433
    weak = curve_from_kappa_tau(lambda s: 0.3 + 0 * s, lambda s: 0.5 + 0 * s, 4.0)
    with pytest.raises(IncompatibleCurve, match="s="):
        transplant(F, weak, 1)


def test_transplant_length_mismatch():
    F = build_strip(helix(), np.pi / 6)
    other = curve_from_kappa_tau(lambda s: 0.5 + 0 * s, lambda s: 0.5 + 0 * s, 3.0)
    with pytest.raises(IncompatibleCurve):
        transplant(F, other, 1)


def test_negative_alpha_inverse_keeps_sign():
    F = build_strip(arctan_curve(), lambda s: -np.pi * (s + 10) / 24)
    assert np.all(inverse(F).alpha < 0)


def test_sign_change_unsupported():
    c = helix(n=256)
    a = np.where(np.arange(len(c.s)) < 128, 0.5, -0.5)
    F = build_strip(c, a)
    with pytest.raises(UnsupportedSignChange):
        transplant(F, c, 1)


def test_inverse_requires_admissible():
    with pytest.raises(NotAdmissible):
        inverse(build_strip(arctan_curve(n=256), 0.01))


def test_reverse_rejects_closed():
    F, _ = torus_strip(256)
    with pytest.raises(TorusDomain):
        reverse_strip(F)


@pytest.mark.parametrize("name", ["arctan_curve", "helix", "nosym_kasym_muasym"])
def test_reverse_same_image_and_angles(name):
    F = strip(name)
    R = reverse_strip(F)
    assert band_hausdorff(F, R) < TOL.sym
    assert np.array_equal(R.alpha, -F.alpha[::-1])
    assert np.abs(R.beta - (np.pi - F.beta[::-1])).max() < TOL.beta


@pytest.mark.parametrize("name", ["planar_ksym_musym", "pos_sym_musym", "nosym_ksym_musym", "helix"])
def test_inverse_dual_is_reverse_for_symmetric_kappa_mu(name):
    F = strip(name)
    assert np.abs(inverse_dual(F).alpha - reverse_strip(F).alpha).max() < TOL.beta


@pytest.mark.parametrize("name", NAMES)
def test_right_equivalence_to_inverse_dual_iff_mu_symmetric(name):
    F = strip(name)
    assert right_equivalent(F, inverse_dual(F)) == strip_mu_symmetry(F).has_symmetry


def test_mu_symmetry_both_directions_on_named_fixtures():
    H = strip("helix")
    A = strip("arctan_curve")
    assert strip_mu_symmetry(H).has_symmetry and right_equivalent(H, inverse_dual(H))
    assert not strip_mu_symmetry(A).has_symmetry and not right_equivalent(A, inverse_dual(A))


@pytest.mark.parametrize("name", NAMES)
def test_right_class_count(name):
    F = strip(name)
    q = isomer_quartet(F)
    assert q.n_right_classes() == (2 if strip_mu_symmetry(F).has_symmetry else 4)


@given(st.lists(st.booleans(), min_size=6, max_size=6))
def test_count_classes_matches_components(bits):
    M = np.eye(4, dtype=bool)
    iu = np.triu_indices(4, 1)
    M[iu] = bits
    M = M | M.T
    # reference via matrix powers (reachability)
    R = np.linalg.matrix_power(M.astype(int) + np.eye(4, dtype=int), 4) > 0
    assert count_classes(M) == len({tuple(r) for r in R})


# --- closed families ---------------------------------------------------------------

@pytest.fixture(scope="module")
def torus():
    F, _ = torus_strip(512)
    return F


def test_family_base_member_is_F(torus):
    assert closed_family(torus, 1, 0.0).strip is torus
    assert np.array_equal(closed_family(torus, 2, 0.0).strip.alpha, -torus.alpha)


@pytest.mark.parametrize("frac", [0.0, 1 / 8, 1 / 4, 0.6])
def test_family_relations(torus, frac):
    b = frac * torus.crease.length
    members = [closed_family(torus, i, b) for i in (1, 2, 3, 4)]
    for m in members:
        assert m.relation_residual() < TOL.beta
        assert np.array_equal(m.strip.mu, torus.mu)
    assert np.all(members[0].strip.alpha > 0) and np.all(members[2].strip.alpha > 0)
    assert np.abs(members[1].strip.alpha + members[0].strip.alpha).max() < 1e-12
    assert np.abs(members[3].strip.alpha + members[2].strip.alpha).max() < 1e-12


def test_family_rulings_differ_on_same_crease(torus):
    l, h = torus.crease.length, torus.crease.h
    fields = []
    for frac in (0.0, 1 / 8, 1 / 4):
        m = closed_family(torus, 1, frac * l).strip
        # bring the member back to the base parametrization
        back = -frac * l / h
        pts = periodic_reindex(m.crease.points, 1, back)
        assert np.abs(pts - torus.crease.points).max() < 1e-6 * l
        fields.append(periodic_reindex(m.xi, 1, back))
    for i in range(3):
        for j in range(i + 1, 3):
            assert np.abs(fields[i] - fields[j]).max() > 1e-2


def test_family_errors(torus):
    with pytest.raises(NotClosed):
        closed_family(strip("helix"), 1, 0.0)
    bad = build_strip(torus_curve(3, n=256), 0.01)
    with pytest.raises(NotAdmissible):
        closed_family(bad, 1, 0.0)


def test_reindex_preserves_mu_under_action(torus):
    h = torus.crease.h
    for sigma, k in ((1, 7), (-1, 0), (-1, 15)):
        d = k * h    # whole-sample shifts keep the vertex sets comparable
        G = reindex_strip(torus, sigma, d)
        assert np.abs(G.mu - periodic_reindex(torus.mu, sigma, d / h)).max() < 1e-12
        assert band_hausdorff(torus, G) < TOL.sym
