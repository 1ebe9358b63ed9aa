"""Symmetry of geodesic curvature, congruence classification, and the torsion solver."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.spatial import cKDTree

from .config import DEFAULT_N, DEFAULT_TOL, Tolerances
from .curves import (
    CurveSymmetryReport,
    Isometry3,
    curve_from_kappa_tau,
    detect_curve_symmetries,
    is_simple,
)
from .errors import (
    NegativeDiscriminant,
    NotAdmissible,
    NotClosed,
    NotInterval,
    PlanarCurve,
    PreconditionFailed,
)
from .isomers import closed_family, count_classes, isomer_quartet, reverse_strip, inverse_dual
from .numerics import derivative, periodic_reindex, regular_value_shifts, rigid_fit
from .strip import (
    DevelopableStrip,
    build_origami_map,
    build_strip,
    is_admissible,
    mean_curvature_along_crease,
)
from .curves import _refine_shift


# --- symmetry of mu ------------------------------------------------------------

@dataclass(frozen=True)
class FunctionSymmetryReport:
    domain_kind: str
    has_symmetry: bool
    actions: tuple
    residual: float
    infinite: bool = False


def mu_symmetry(mu, domain_kind="interval", h=None, tol: Tolerances = DEFAULT_TOL):
    """Equi-affine self-equivalences ``s -> sigma s + d`` of a sampled function.

    Intervals only admit the end-swapping map; tori get candidate shifts from
    the preimages of a regular value. The acceptance threshold is
    ``tol.musym`` relative to ``max |mu|``.
    """
    mu = np.asarray(mu, dtype=float)
    thr = tol.musym * max(np.abs(mu).max(), 1e-300)
    if domain_kind == "interval":
        r = float(np.abs(mu - mu[::-1]).max())
        ok = r < thr
        return FunctionSymmetryReport("interval", ok, ((-1, 0.0),) if ok else (), r)
    if domain_kind != "torus":
        raise ValueError("domain_kind must be 'interval' or 'torus'")
    n = len(mu)
    h = 1.0 / n if h is None else h
    l = n * h
    if mu.max() - mu.min() < thr:
        return FunctionSymmetryReport("torus", True, (), float(mu.max() - mu.min()), infinite=True)
    actions = []
    best = np.inf
    for sigma in (1, -1):
        for d in regular_value_shifts(mu, mu, h, sigma):
            d = _refine_shift(mu, mu, h, sigma, d)
            if abs(d - l) < 1e-9 * l:
                d = 0.0
            if sigma == 1 and min(d, l - d) < 0.5 * h:
                continue
            r = float(np.abs(periodic_reindex(mu, sigma, d / h) - mu).max())
            best = min(best, r)
            if r < thr and not any(a[0] == sigma and abs(a[1] - d) < h for a in actions):
                actions.append((sigma, d))
    return FunctionSymmetryReport("torus", bool(actions), tuple(actions),
                                  best if np.isfinite(best) else float("inf"))


def strip_mu_symmetry(strip: DevelopableStrip, tol: Tolerances = DEFAULT_TOL):
    kind = "torus" if strip.closed else "interval"
    return mu_symmetry(strip.mu, kind, strip.crease.h, tol)


# --- registration oracle -------------------------------------------------------

def _band(eps, n_v=5):
    return np.linspace(-eps, eps, n_v)


def _stride(n, target=512):
    return max(1, n // target)


def register_interval(x: DevelopableStrip, y: DevelopableStrip, eps=None,
                      tol: Tolerances = DEFAULT_TOL):
    """Best rigid match of two band images over crease-preserving correspondences.

    Tries ``(u, v) -> (+-u, +-v)`` and both orientations of the isometry;
    returns ``(residual, R, t, sigma_u, sigma_v)`` for the best candidate.
    """
    eps = x.width if eps is None else eps
    v = _band(eps)
    k = _stride(len(x.s))
    X = x.points(v)[::k]
    best = None
    for su in (1, -1):
        Yc = y.points(v)
        if su < 0:
            Yc = Yc[::-1]
        Yc = Yc[::k]
        for sv in (1, -1):
            Y = Yc if sv > 0 else Yc[:, ::-1]
            R, t, r = rigid_fit(X, Y)
            if best is None or r < best[0]:
                best = (r, R, t, su, sv)
    return best


def register_closed(x: DevelopableStrip, y: DevelopableStrip, eps=None,
                    tol: Tolerances = DEFAULT_TOL):
    """As :func:`register_interval` for closed creases; shifts come from curvature preimages."""
    eps = x.width if eps is None else eps
    v = _band(eps)
    h = x.crease.h
    k = _stride(len(x.s))
    X = x.points(v)[::k]
    best = None
    for su in (1, -1):
        cands = regular_value_shifts(x.crease.kappa, y.crease.kappa, h, su)
        if not cands:
            cands = [0.0]
        for d in cands:
            d = _refine_shift(x.crease.kappa, y.crease.kappa, h, su, d)
            cp = periodic_reindex(y.crease.points, su, d / h)
            xi = periodic_reindex(y.xi, su, d / h)
            Yc = (cp[:, None, :] + v[None, :, None] * xi[:, None, :])[::k]
            for sv in (1, -1):
                Y = Yc if sv > 0 else Yc[:, ::-1]
                R, t, r = rigid_fit(X, Y)
                if best is None or r < best[0]:
                    best = (r, R, t, su, sv, d)
    return best


def congruence_matrix(strips, eps=None, tol: Tolerances = DEFAULT_TOL):
    """Pairwise congruence of band images by registration; also returns residuals."""
    m = len(strips)
    l = strips[0].crease.length
    reg = register_closed if strips[0].closed else register_interval
    M = np.eye(m, dtype=bool)
    res = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            r = reg(strips[i], strips[j], eps, tol)[0]
            res[i, j] = res[j, i] = r
            M[i, j] = M[j, i] = r < tol.sym * l
    return M, res


def map_residual(T: Isometry3, x: DevelopableStrip, y: DevelopableStrip, eps=None, sv=1):
    """``max |T(x(s, v)) - y(s, sv v)|`` over the band samples."""
    eps = x.width if eps is None else eps
    v = _band(eps)
    P = T(x.points(v))
    Q = y.points(sv * v)
    return float(np.linalg.norm(P - Q, axis=-1).max())


def band_hausdorff(x: DevelopableStrip, y: DevelopableStrip, eps=None, n_v=9,
                   tube: float = 0.0):
    """Symmetric Hausdorff distance of mesh vertex sets, ignoring vertices with ``|v| <= tube``."""
    eps = x.width if eps is None else eps
    v = np.linspace(-eps, eps, n_v)
    v = v[np.abs(v) > tube]
    A = x.points(v).reshape(-1, 3)
    B = y.points(v).reshape(-1, 3)
    dab = cKDTree(B).query(A)[0].max()
    dba = cKDTree(A).query(B)[0].max()
    return float(max(dab, dba))


# --- quartet classification ------------------------------------------------------

CASES = ("B1_no_symmetries", "B2_le_two", "B3a_planar_nontrivial",
         "B3b_planar_mu_sym", "B3c_positive_sym_mu_sym")


@dataclass(frozen=True, eq=False)
class CongruenceReport:
    n_right_classes: int
    n_congruence_classes: int
    fired_case: str
    satisfied_cases: tuple
    curve_symmetries: CurveSymmetryReport
    mu_symmetry: FunctionSymmetryReport
    pairwise_matrix: np.ndarray
    pairwise_residual: np.ndarray
    n_oracle: int
    n_right_theory: int
    pattern_simple: bool
    names: tuple = ("F", "F_dual", "F_inv", "F_inv_dual")

    @property
    def agrees(self):
        return self.n_oracle == self.n_congruence_classes

    def as_dict(self):
        cs = self.curve_symmetries
        return {
            "n_right_classes": self.n_right_classes,
            "n_right_theory": self.n_right_theory,
            "N": self.n_congruence_classes,
            "N_registration": self.n_oracle,
            "agrees": self.agrees,
            "fired_case": self.fired_case,
            "satisfied_cases": list(self.satisfied_cases),
            "curve": {
                "planar": cs.is_planar,
                "circle": cs.is_circle,
                "positive_symmetry": cs.has_positive_symmetry,
                "negative_symmetry": cs.has_negative_symmetry,
                "symmetries": [{"sign": x.sign, "sigma": x.sigma, "shift": round(x.shift, 9)}
                               for x in cs.symmetries],
            },
            "mu": {"has_symmetry": self.mu_symmetry.has_symmetry,
                   "residual": float(f"{self.mu_symmetry.residual:.6e}")},
            "pattern_simple": self.pattern_simple,
            "pairwise": {"names": list(self.names),
                         "congruent": self.pairwise_matrix.astype(int).tolist()},
        }


def decide_congruence(curve: CurveSymmetryReport, mu_sym: bool):
    """Case analysis for the number of congruence classes of the four isomers."""
    planar = curve.is_planar
    nontrivial = curve.has_nontrivial_symmetry
    if not planar and not nontrivial and not mu_sym:
        return 4, CASES[0], (CASES[0],)
    hits = []
    if planar and nontrivial:
        hits.append(CASES[2])
    if planar and mu_sym:
        hits.append(CASES[3])
    if curve.has_positive_symmetry and mu_sym:
        hits.append(CASES[4])
    if hits:
        return 1, hits[0], tuple(hits)
    return 2, CASES[1], (CASES[1],)


def classify_quartet(F: DevelopableStrip, eps=None, tol: Tolerances = DEFAULT_TOL):
    if F.closed:
        raise NotInterval("quartet classification is for interval creases")
    if not is_admissible(F, tol):
        raise NotAdmissible("classification needs an admissible strip")
    q = isomer_quartet(F, tol)
    curve = detect_curve_symmetries(F.crease, tol)
    ms = strip_mu_symmetry(F, tol)
    N, case, hits = decide_congruence(curve, ms.has_symmetry)
    M, res = congruence_matrix(q.members, eps, tol)
    gamma = build_origami_map(F).crease_pattern
    return CongruenceReport(
        n_right_classes=q.n_right_classes(tol), n_congruence_classes=N, fired_case=case,
        satisfied_cases=hits, curve_symmetries=curve, mu_symmetry=ms,
        pairwise_matrix=M, pairwise_residual=res, n_oracle=count_classes(M),
        n_right_theory=2 if ms.has_symmetry else 4, pattern_simple=is_simple(gamma))


def midpoint_criterion(F: DevelopableStrip, tol: Tolerances = DEFAULT_TOL):
    """``"N_is_4"`` when both kappa' and mu' are nonzero at the midpoint, else ``"inconclusive"``."""
    if F.closed:
        raise NotInterval("midpoint criterion needs an interval crease")
    c = F.crease
    if detect_curve_symmetries(c, tol).is_planar:
        raise PlanarCurve("midpoint criterion needs a non-planar crease")
    i = c.mid_index
    dk = derivative(c.kappa, c.h)[i]
    dm = derivative(F.mu, c.h)[i]
    thr = tol.deriv / c.length
    return "N_is_4" if (abs(dk) > thr and abs(dm) > thr) else "inconclusive"


# --- equal mean curvature torsion ---------------------------------------------------

def _d1(f, s, step):
    return (f(s - 2 * step) - 8 * f(s - step) + 8 * f(s + step) - f(s + 2 * step)) / (12 * step)


def torsion_coefficients(kappa: Callable, alpha: Callable, s, step=1e-4):
    """``A, B0, B1, B2`` of the quadratic for tau at parameters ``s``."""
    s = np.asarray(s, dtype=float)

    def A(u):
        return np.arccos(np.clip(kappa(-u) * np.cos(alpha(-u)) / kappa(u), -1, 1))

    a = alpha(s) * np.ones_like(s)
    ap = _d1(alpha, s, step) * np.ones_like(s)
    Av = A(s)
    Ap = _d1(A, s, step)
    k = kappa(s) * np.ones_like(s)
    ca, cA = 1 / np.sin(a), 1 / np.sin(Av)
    B0 = ca - cA
    B1 = ap * ca - Ap * cA
    B2 = (ap**2 + (k * np.sin(a)) ** 2) * ca - (Ap**2 + (k * np.sin(Av)) ** 2) * cA
    return Av, B0, B1, B2


def torsion_from_coefficients(B0, B1, B2):
    disc = B1**2 - B0 * B2
    return -B2 / (B1 + np.sqrt(np.maximum(disc, 0))), disc


@dataclass(frozen=True, eq=False)
class TorsionSolution:
    tau: Callable
    F: DevelopableStrip
    F1: DevelopableStrip
    length: float
    tau0: float
    B1_0: float
    B2_0: float
    h_residual: float
    quadratic_residual: float
    halvings: int


def equal_mean_curvature_torsion(kappa: Callable, alpha: Callable, l: float, n: int = DEFAULT_N,
                                 step: float = 1e-4, max_halvings: int = 10,
                                 tol: Tolerances = DEFAULT_TOL) -> TorsionSolution:
    """Torsion making the mean curvature of ``F`` and of its reversed inverse dual agree on the crease.

    The crease is rebuilt from ``kappa`` and the solved ``tau``; the interval
    is halved toward ``s = 0`` while the discriminant goes negative or the
    strip fails admissibility.
    """
    s0 = np.array([0.0])
    a0 = float(alpha(s0)[0] if np.ndim(alpha(s0)) else alpha(s0))
    if not 0 < a0 < np.pi / 2:
        raise PreconditionFailed("alpha(0) must lie in (0, pi/2)")
    kp0 = float(np.atleast_1d(_d1(kappa, s0, step))[0])
    ap0 = float(np.atleast_1d(_d1(alpha, s0, step))[0])
    if not kp0 < 0:
        raise PreconditionFailed(f"need kappa'(0) < 0, got {kp0:.6g}")
    if ap0 < -1e-9:
        raise PreconditionFailed(f"need alpha'(0) >= 0, got {ap0:.6g}")

    def tau(s):
        _, B0, B1, B2 = torsion_coefficients(kappa, alpha, np.atleast_1d(s), step)
        t, _ = torsion_from_coefficients(B0, B1, B2)
        return t if np.ndim(s) else float(t[0])

    length = float(l)
    for halving in range(max_halvings + 1):
        grid = np.linspace(-length / 2, length / 2, 513)
        _, B0, B1, B2 = torsion_coefficients(kappa, alpha, grid, step)
        disc = B1**2 - B0 * B2
        if np.all(disc >= 0) and np.all(B1 + np.sqrt(np.maximum(disc, 0)) > 0):
            fine = np.linspace(-length / 2, length / 2, 8 * n + 1)
            tau_fine = CubicSpline(fine, tau(fine))
            C = curve_from_kappa_tau(kappa, tau_fine, length, n=n, tol=tol)
            F = build_strip(C, alpha, tol=tol)
            if is_admissible(F, tol):
                break
        length /= 2
    else:
        raise NegativeDiscriminant("no interval around s=0 with a real smooth torsion was found")

    F1 = reverse_strip(inverse_dual(F, tol), tol)
    H = mean_curvature_along_crease(F)
    H1 = mean_curvature_along_crease(F1)
    h_res = float(np.abs(H - H1)[3:-3].max())
    _, B0, B1, B2 = torsion_coefficients(kappa, alpha, C.s, step)
    t = C.tau
    q_res = float(np.abs(B0 * t**2 + 2 * B1 * t + B2).max())
    _, _, b1, b2 = torsion_coefficients(kappa, alpha, s0, step)
    return TorsionSolution(tau, F, F1, length, tau(0.0), float(b1[0]), float(b2[0]),
                           h_res, q_res, halving)


# --- closed creases ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClosedCensus:
    labels: tuple
    members: tuple
    matrix: Optional[np.ndarray]
    classes: tuple
    curve_symmetries: Optional[CurveSymmetryReport]
    mu_symmetry: Optional[FunctionSymmetryReport]
    size_bound: Optional[int]
    circle_crease: bool = False
    residual: Optional[np.ndarray] = None

    @property
    def n_classes(self):
        return len(self.classes)

    @property
    def bound_ok(self):
        if self.size_bound is None:
            return True
        return max(len(c) for c in self.classes) <= self.size_bound

    @property
    def all_distinct(self):
        return all(len(c) == 1 for c in self.classes)

    def congruent(self, a, b):
        return bool(self.matrix[self.labels.index(a), self.labels.index(b)])


def _classes(M):
    n = len(M)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        stack, comp = [i], []
        seen[i] = True
        while stack:
            k = stack.pop()
            comp.append(k)
            for j in np.nonzero(M[k])[0]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        out.append(tuple(sorted(comp)))
    return tuple(out)


def classify_closed(F: DevelopableStrip, grid_b: int = 8, eps=None,
                    tol: Tolerances = DEFAULT_TOL) -> ClosedCensus:
    """Census of the members ``F_b^i`` with ``b = k l / grid_b``, grouped by congruence."""
    if not F.closed:
        raise NotClosed("census needs a closed crease")
    curve = detect_curve_symmetries(F.crease, tol)
    if curve.is_circle:
        return ClosedCensus((), (), None, (), curve, None, None, circle_crease=True)
    if not is_admissible(F, tol):
        raise NotAdmissible("census needs an admissible strip")
    l = F.crease.length
    labels, members = [], []
    for i in (1, 2, 3, 4):
        for k in range(grid_b):
            b = k * l / grid_b
            labels.append((i, k))
            members.append(closed_family(F, i, b, tol).strip)
    M, res = congruence_matrix(members, eps, tol)
    ms = strip_mu_symmetry(F, tol)
    bound = None
    if not ms.infinite:
        bound = (len(curve.symmetries) + 1) * (len(ms.actions) + 1) * 4
    return ClosedCensus(tuple(labels), tuple(members), M, _classes(M), curve, ms, bound,
                        residual=res)
