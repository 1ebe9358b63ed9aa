"""Developable strips along a crease, their meshes and the origami map."""

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline

from .config import (
    DEFAULT_NV,
    DEFAULT_TOL,
    DEFAULT_WIDTH_FRACTION,
    DEFAULT_WIDTH_RADIUS_FRACTION,
    Tolerances,
)
from .curves import PlaneCurve, SpaceCurve, plane_curve_from_mu
from .errors import AlphaOutOfRange, SelfIntersectingMesh
from .numerics import derivative


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def second_angle(kappa, tau, alpha, alpha_prime):
    """Second angular function in (0, pi) from ``cot b = (a' + tau) / (kappa sin a)``."""
    x = alpha_prime + tau
    y = kappa * np.sin(alpha)
    return np.arctan2(np.abs(y), np.sign(y) * x)


@dataclass(frozen=True, eq=False)
class DevelopableStrip:
    """Ruled strip ``f(s, v) = c(s) + v xi(s)`` in normal form along ``crease``."""

    crease: SpaceCurve
    alpha: np.ndarray
    alpha_prime: np.ndarray
    beta: np.ndarray
    xi: np.ndarray
    conormal: np.ndarray
    mu: np.ndarray
    width: float

    def __post_init__(self):
        for name in ("alpha", "alpha_prime", "beta", "xi", "conormal", "mu"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def s(self):
        return self.crease.s

    @property
    def closed(self):
        return self.crease.closed

    def beta_residual(self, interior=True):
        """``|cot(beta) kappa sin(alpha) - (alpha' + tau)|`` per sample."""
        c = self.crease
        r = np.abs(self.kappa_sin() / np.tan(self.beta) - (self.alpha_prime + c.tau))
        if interior and not c.closed:
            r = r[3:-3]
        return r

    def kappa_sin(self):
        return self.crease.kappa * np.sin(self.alpha)

    def points(self, v):
        """Surface points ``c(s) + v xi(s)`` for a vector of ``v`` values, shape (n_s, n_v, 3)."""
        v = np.atleast_1d(np.asarray(v, dtype=float))
        return self.crease.points[:, None, :] + v[None, :, None] * self.xi[:, None, :]

    def with_width(self, width):
        return DevelopableStrip(self.crease, self.alpha, self.alpha_prime, self.beta,
                                self.xi, self.conormal, self.mu, float(width))


def default_width(crease: SpaceCurve) -> float:
    """Band half-width ``0.05 l``, capped at a tenth of the smallest curvature radius."""
    return float(min(DEFAULT_WIDTH_FRACTION * crease.length,
                     DEFAULT_WIDTH_RADIUS_FRACTION / crease.kappa.max()))


def assemble_strip(crease: SpaceCurve, alpha, alpha_prime, width, mu=None,
                   tol: Tolerances = DEFAULT_TOL):
    """Assemble a strip from sampled angular data; ``mu`` may be passed through."""
    alpha = np.asarray(alpha, dtype=float)
    a = np.abs(alpha)
    if np.any(a < tol.alpha) or np.any(a > np.pi / 2 - tol.alpha) or not np.all(np.isfinite(alpha)):
        bad = int(np.argmin(np.minimum(a, np.pi / 2 - a)))
        raise AlphaOutOfRange(
            f"alpha must stay inside (-pi/2, 0) or (0, pi/2); alpha={alpha[bad]:.6g} at s={crease.s[bad]:.6g}")
    beta = second_angle(crease.kappa, crease.tau, alpha, alpha_prime)
    ca, sa = np.cos(alpha), np.sin(alpha)
    N = ca[:, None] * crease.n + sa[:, None] * crease.b
    xi = np.cos(beta)[:, None] * crease.e + np.sin(beta)[:, None] * N
    if mu is None:
        mu = crease.kappa * ca
    if width is None:
        width = default_width(crease)
    return DevelopableStrip(crease, alpha, alpha_prime, beta, xi, N, mu, float(width))


def build_strip(crease: SpaceCurve, alpha: Union[Callable, np.ndarray, float],
                width: Optional[float] = None, tol: Tolerances = DEFAULT_TOL):
    """Strip with first angular function ``alpha`` along ``crease``.

    A callable ``alpha`` is evaluated at ``s + crease.origin`` so it can be
    written in the source curve's own arc-length coordinate. ``alpha'`` is
    always taken by finite differences on the samples.
    """
    if callable(alpha):
        a = np.asarray(alpha(crease.s + crease.origin), dtype=float) * np.ones(len(crease.s))
    else:
        a = np.asarray(alpha, dtype=float) * np.ones(len(crease.s))
    ap = derivative(a, crease.h, 1, crease.closed)
    return assemble_strip(crease, a, ap, width, tol=tol)


def is_admissible(strip: DevelopableStrip, tol: Tolerances = DEFAULT_TOL) -> bool:
    return bool(strip.mu.max() < strip.crease.kappa.min() - tol.kappa)


def mean_curvature_along_crease(strip: DevelopableStrip):
    """``|H|`` on the crease, ``(k^2 sin^2 a + (a' + tau)^2) / (2 k |sin a|)``."""
    k = strip.crease.kappa
    sa = np.sin(strip.alpha)
    return ((k * sa) ** 2 + (strip.alpha_prime + strip.crease.tau) ** 2) / (2 * k * np.abs(sa))


# --- meshes ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StripMesh:
    vertices: np.ndarray     # (n_s, n_v, 3)
    faces: np.ndarray        # (m, 3) indices into the flattened grid
    s: np.ndarray
    v: np.ndarray
    closed: bool
    max_angle_defect: float
    max_gaussian_curvature: float

    @property
    def flat_vertices(self):
        return self.vertices.reshape(-1, 3)

    def face_normals(self):
        P = self.flat_vertices
        a, b, c = P[self.faces[:, 0]], P[self.faces[:, 1]], P[self.faces[:, 2]]
        nrm = np.cross(b - a, c - a)
        return nrm / np.linalg.norm(nrm, axis=1)[:, None]


def _grid_faces(n_s, n_v, closed):
    i = np.arange(n_s if closed else n_s - 1)
    j = np.arange(n_v - 1)
    I, J = np.meshgrid(i, j, indexing="ij")
    I, J = I.ravel(), J.ravel()
    I1 = (I + 1) % n_s
    a = I * n_v + J
    b = I1 * n_v + J
    c = I1 * n_v + J + 1
    d = I * n_v + J + 1
    return np.concatenate([np.stack([a, b, c], 1), np.stack([a, c, d], 1)])


def angle_defects(vertices, faces, n_s, n_v, closed):
    """Angle defect and one-third-area at every interior grid vertex."""
    P = vertices.reshape(-1, 3)
    total = np.zeros(len(P))
    area = np.zeros(len(P))
    for k in range(3):
        i0, i1, i2 = faces[:, k], faces[:, (k + 1) % 3], faces[:, (k + 2) % 3]
        u = P[i1] - P[i0]
        w = P[i2] - P[i0]
        cr = np.linalg.norm(np.cross(u, w), axis=1)
        ang = np.arctan2(cr, np.einsum("ij,ij->i", u, w))
        np.add.at(total, i0, ang)
        np.add.at(area, i0, cr / 6)
    interior = np.zeros((n_s, n_v), dtype=bool)
    interior[:, 1:-1] = True
    if not closed:
        interior[0] = interior[-1] = False
    interior = interior.ravel()
    defect = 2 * np.pi - total[interior]
    return defect, area[interior]


def _check_rulings(strip: DevelopableStrip, eps):
    """Raise if neighbouring rulings meet inside the band (the surface folds over)."""
    c, xi = strip.crease.points, strip.xi
    nxt = np.roll(np.arange(len(xi)), -1)
    if not strip.closed:
        nxt = nxt[:-1]
    idx = np.arange(len(nxt))
    p, q = c[idx], c[nxt]
    d1, d2 = xi[idx], xi[nxt]
    w0 = p - q
    b = np.einsum("ij,ij->i", d1, d2)
    d = np.einsum("ij,ij->i", d1, w0)
    e = np.einsum("ij,ij->i", d2, w0)
    den = 1 - b**2
    ok = den > 1e-14
    v = np.full(len(idx), np.inf)
    w = np.full(len(idx), np.inf)
    v[ok] = (b[ok] * e[ok] - d[ok]) / den[ok]
    w[ok] = (e[ok] - b[ok] * d[ok]) / den[ok]
    hit = (np.abs(v) < eps) & (np.abs(w) < eps)
    if np.any(hit):
        k = int(np.argmax(hit))
        raise SelfIntersectingMesh(
            f"rulings near s={strip.s[k]:.6g} cross at v={v[k]:.4g} inside the band |v|<{eps:.4g}")


def sample_mesh(strip: DevelopableStrip, n_v: int = DEFAULT_NV, eps: Optional[float] = None,
                tol: Tolerances = DEFAULT_TOL) -> StripMesh:
    """Triangulated grid over ``J x [-eps, eps]`` with flatness diagnostics."""
    eps = strip.width if eps is None else float(eps)
    _check_rulings(strip, eps)
    v = np.linspace(-eps, eps, n_v)
    V = strip.points(v)
    n_s = V.shape[0]
    faces = _grid_faces(n_s, n_v, strip.closed)
    defect, area = angle_defects(V, faces, n_s, n_v, strip.closed)
    return StripMesh(V, faces, np.array(strip.s), v, strip.closed,
                     float(np.abs(defect).max()), float(np.abs(defect / area).max()))


# --- origami map -------------------------------------------------------------

def develop_mu(mu, length, closed, s_start=0.0, n=None):
    """Crease pattern from per-sample ``mu`` via spline interpolation and RK4."""
    mu = np.asarray(mu, dtype=float)
    if closed:
        s = s_start + np.arange(len(mu) + 1) * (length / len(mu))
        spl = CubicSpline(s, np.append(mu, mu[0]), bc_type="periodic")
        n = n or len(mu)
    else:
        s = np.linspace(s_start, s_start + length, len(mu))
        spl = CubicSpline(s, mu)
        n = n or len(mu) - 1
    return plane_curve_from_mu(spl, length, n=n, s_start=s_start, periodic_extension=closed)


@dataclass(frozen=True, eq=False)
class OrigamiMap:
    upper: DevelopableStrip
    lower: DevelopableStrip
    crease_pattern: PlaneCurve
    beta_left: np.ndarray
    beta_right: np.ndarray

    def meshes(self, n_v=DEFAULT_NV, eps=None):
        """Upper band of ``upper`` (v >= 0) and lower band of ``lower`` (v <= 0)."""
        eps = self.upper.width if eps is None else eps
        m = (n_v + 1) // 2
        up = sample_mesh(self.upper, 2 * m - 1, eps)
        lo = sample_mesh(self.lower, 2 * m - 1, eps)
        return _half(up, m - 1, None), _half(lo, 0, m)


def _half(mesh: StripMesh, start, stop):
    V = mesh.vertices[:, start:stop]
    n_s, n_v = V.shape[:2]
    faces = _grid_faces(n_s, n_v, mesh.closed)
    return StripMesh(V, faces, mesh.s, mesh.v[start:stop], mesh.closed,
                     mesh.max_angle_defect, mesh.max_gaussian_curvature)


def build_origami_map(strip: DevelopableStrip) -> OrigamiMap:
    from .isomers import dual

    low = dual(strip)
    gamma = develop_mu(strip.mu, strip.crease.length, strip.closed, s_start=float(strip.s[0]))
    return OrigamiMap(strip, low, gamma, strip.beta.copy(), np.pi - low.beta)


# --- intersection test --------------------------------------------------------

@dataclass(frozen=True)
class IntersectionResult:
    ok: bool
    identical: bool = False
    points: Optional[tuple] = None
    distance_from_crease: float = 0.0

    def __bool__(self):
        return self.ok


def _crease_match(a: DevelopableStrip, b: DevelopableStrip):
    """Index map ``i -> j`` with ``c_a(s_i) == c_b(s_j)``."""
    pa, pb = a.crease.points, b.crease.points
    if len(pa) == len(pb):
        if np.allclose(pa, pb, atol=1e-12, rtol=0):
            return np.arange(len(pa))
        rev = np.arange(len(pa))[::-1] if not a.closed else (-np.arange(len(pa))) % len(pa)
        if np.allclose(pa, pb[rev], atol=1e-12, rtol=0):
            return rev
    from scipy.spatial import cKDTree
    return cKDTree(pb).query(pa)[1]


def strips_intersect_only_along_crease(a: DevelopableStrip, b: DevelopableStrip,
                                       eps: Optional[float] = None,
                                       sides=(0, 0), tol: Tolerances = DEFAULT_TOL,
                                       chunk=128) -> IntersectionResult:
    """Test whether the bands ``|v| < eps`` of two strips on one crease meet only at the crease.

    Each ruling of ``a`` is tested against every ruling of ``b``: the two
    lines meet iff ``det(c_b(u) - c_a(s), xi_a(s), xi_b(u))`` vanishes, so
    sign changes of that determinant along ``u`` locate candidates, which are
    kept when both line parameters lie in the band and the meeting point is
    farther than ``tol.sym * l`` from the crease. ``sides`` restricts ``v`` to
    ``>= 0`` (+1) or ``<= 0`` (-1) on either strip.
    """
    eps = a.width if eps is None else float(eps)
    l = a.crease.length
    tube = tol.sym * l
    match = _crease_match(a, b)
    ca, xa = a.crease.points, a.xi
    cb, xb = b.crease.points, b.xi
    par = np.linalg.norm(np.cross(xa, xb[match]), axis=1)
    if par.max() < tol.frame ** 0.5:
        return IntersectionResult(False, identical=True)
    if par.min() < tol.frame ** 0.5:
        i = int(np.argmin(par))
        p = ca[i] + 0.5 * eps * xa[i]
        return IntersectionResult(False, points=(p, p), distance_from_crease=0.5 * eps)

    def inside(t, side):
        if side > 0:
            return (t >= 0) & (t < eps)
        if side < 0:
            return (t <= 0) & (t > -eps)
        return np.abs(t) < eps

    n_b = len(cb)
    jj = np.arange(n_b)
    jn = (jj + 1) % n_b if b.closed else jj[:-1] + 1
    j0 = jj if b.closed else jj[:-1]
    for start in range(0, len(ca), chunk):
        I = np.arange(start, min(start + chunk, len(ca)))
        D = cb[None, :, :] - ca[I, None, :]
        h = np.einsum("kij,kij->ki", np.cross(D, xa[I, None, :]), xb[None, :, :])
        h0, h1 = h[:, j0], h[:, jn]
        cross = (h0 * h1 < 0)
        ki, kj = np.nonzero(cross)
        if len(ki) == 0:
            continue
        t = h0[ki, kj] / (h0[ki, kj] - h1[ki, kj])
        j_lo, j_hi = j0[kj], jn[kj]
        cu = (1 - t)[:, None] * cb[j_lo] + t[:, None] * cb[j_hi]
        xu = (1 - t)[:, None] * xb[j_lo] + t[:, None] * xb[j_hi]
        xu /= np.linalg.norm(xu, axis=1)[:, None]
        p0 = ca[I[ki]]
        d1 = xa[I[ki]]
        w0 = p0 - cu
        bb = np.einsum("ij,ij->i", d1, xu)
        dd = np.einsum("ij,ij->i", d1, w0)
        ee = np.einsum("ij,ij->i", xu, w0)
        den = np.maximum(1 - bb**2, 1e-300)
        v = (bb * ee - dd) / den
        w = (ee - bb * dd) / den
        hit = inside(v, sides[0]) & inside(w, sides[1])
        if not np.any(hit):
            continue
        pa = p0 + v[:, None] * d1
        pb = cu + w[:, None] * xu
        for k in np.nonzero(hit)[0]:
            dist = float(np.linalg.norm(ca - pa[k], axis=1).min())
            if dist > tube and np.linalg.norm(pa[k] - pb[k]) < tube:
                return IntersectionResult(False, points=(pa[k], pb[k]), distance_from_crease=dist)
    return IntersectionResult(True)

