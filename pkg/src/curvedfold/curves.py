"""Arc-length sampled curves in R^3 and R^2, their Frenet data and symmetries."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import make_interp_spline
from scipy.optimize import minimize_scalar

from .config import DEFAULT_N, DEFAULT_TOL, Tolerances
from .errors import (
    DegenerateCurve,
    IntegrationFailure,
    NonOrthonormalFrame,
    NonPositiveKappa,
    VanishingCurvature,
)
from .numerics import (
    arclength_inverse,
    derivative,
    periodic_reindex,
    regular_value_shifts,
    rigid_fit,
    rk4,
)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SpaceCurve:
    """Arc-length samples of a crease.

    Interval curves live on ``s in [-l/2, l/2]`` with ``n + 1`` samples and
    ``s = 0`` at the midpoint. Closed curves live on ``[0, l)`` with ``n``
    samples. ``origin`` is the native arc-length coordinate of ``s = 0``,
    which lets callers state angular functions in the source's own parameter.
    """

    s: np.ndarray
    points: np.ndarray
    e: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    length: float
    closed: bool = False
    origin: float = 0.0

    def __post_init__(self):
        for name in ("s", "points", "e", "n", "b", "kappa", "tau"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def h(self):
        return self.length / (len(self.s) if self.closed else len(self.s) - 1)

    @property
    def domain_kind(self):
        return "torus" if self.closed else "interval"

    @property
    def mid_index(self):
        return 0 if self.closed else (len(self.s) - 1) // 2

    def transformed(self, R, t=(0.0, 0.0, 0.0)):
        """Image under ``x -> R x + t``; torsion flips sign with det(R)."""
        R = np.asarray(R, dtype=float)
        sig = np.sign(np.linalg.det(R))
        return SpaceCurve(
            self.s, self.points @ R.T + np.asarray(t), self.e @ R.T, self.n @ R.T,
            sig * (self.b @ R.T), self.kappa, sig * self.tau, self.length,
            self.closed, self.origin,
        )

    def validate(self, tol: Tolerances = DEFAULT_TOL):
        steps = np.linalg.norm(np.diff(self.points, axis=0), axis=1)
        if np.any(steps > self.h + tol.len * self.length):
            raise DegenerateCurve("samples are not arc-length consistent")
        if np.any(self.kappa <= 0):
            raise VanishingCurvature("curvature must be positive")
        F = np.stack([self.e, self.n, self.b], axis=1)
        gram = np.einsum("kij,klj->kil", F, F)
        if np.abs(gram - np.eye(3)).max() > tol.frame:
            raise NonOrthonormalFrame("Frenet frame not orthonormal")
        if np.any(np.linalg.det(F) < 0):
            raise NonOrthonormalFrame("Frenet frame not right-handed")
        return self


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """Arc-length samples of a plane curve with signed curvature ``mu``."""

    s: np.ndarray
    points: np.ndarray
    mu: np.ndarray
    length: float
    periodic_extension: bool = False
    theta: Optional[np.ndarray] = None

    def __post_init__(self):
        for name in ("s", "points", "mu"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if self.theta is not None:
            object.__setattr__(self, "theta", _frozen(self.theta))

    @property
    def h(self):
        return self.length / (len(self.s) - 1)

    def measured_curvature(self):
        d1 = derivative(self.points, self.h, 1)
        d2 = derivative(self.points, self.h, 2)
        cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        return cross / np.linalg.norm(d1, axis=1) ** 3


@dataclass(frozen=True)
class Isometry3:
    rotation: np.ndarray
    translation: np.ndarray

    @property
    def sign(self) -> int:
        return int(round(np.linalg.det(self.rotation)))

    def __call__(self, x):
        return np.asarray(x) @ self.rotation.T + self.translation

    def conjugate(self, R, t):
        """``M T M^-1`` for the motion ``M x = R x + t``."""
        R = np.asarray(R, dtype=float)
        t = np.asarray(t, dtype=float)
        Rn = R @ self.rotation @ R.T
        return Isometry3(Rn, R @ self.translation + t - Rn @ t)


@dataclass(frozen=True)
class CurveSymmetry:
    isometry: Isometry3
    sigma: int
    shift: float

    @property
    def sign(self):
        return self.isometry.sign


@dataclass(frozen=True)
class CurveSymmetryReport:
    symmetries: tuple
    is_planar: bool
    is_circle: bool
    plane: Optional[tuple] = None
    infinite: bool = False
    trivial: Optional[Isometry3] = None

    @property
    def has_trivial_symmetry(self):
        return self.trivial is not None

    @property
    def has_positive_symmetry(self):
        return self.infinite or any(x.sign > 0 for x in self.symmetries)

    @property
    def has_negative_symmetry(self):
        return self.infinite or any(x.sign < 0 for x in self.symmetries)

    @property
    def has_nontrivial_symmetry(self):
        return self.infinite or bool(self.symmetries)

    @property
    def has_symmetry(self):
        return self.has_nontrivial_symmetry or self.has_trivial_symmetry


# --- construction -----------------------------------------------------------

def _grid(length, n, closed):
    h = length / n
    if closed:
        return np.arange(n) * h
    return (np.arange(n + 1) - n // 2) * h


def _even(n):
    return n + (n % 2)


def frenet_from_samples(points, h, closed, tol: Tolerances = DEFAULT_TOL):
    """Frenet apparatus of uniformly arc-length sampled points by finite differences."""
    d1 = derivative(points, h, 1, closed)
    d2 = derivative(points, h, 2, closed)
    d3 = derivative(points, h, 3, closed)
    speed = np.linalg.norm(d1, axis=1)
    cr = np.cross(d1, d2)
    crn = np.linalg.norm(cr, axis=1)
    kappa = crn / speed**3
    if np.any(kappa <= tol.kappa):
        raise VanishingCurvature(f"curvature vanishes (min {kappa.min():.3g})")
    tau = np.einsum("ij,ij->i", cr, d3) / crn**2
    e = d1 / speed[:, None]
    nn = d2 - np.einsum("ij,ij->i", d2, e)[:, None] * e
    nn /= np.linalg.norm(nn, axis=1)[:, None]
    b = np.cross(e, nn)
    return e, nn, b, kappa, tau


def _space_curve_from_uniform(points, length, closed, origin=0.0, tol=DEFAULT_TOL):
    n = len(points) if closed else len(points) - 1
    h = length / n
    e, nn, b, kappa, tau = frenet_from_samples(points, h, closed, tol)
    return SpaceCurve(_grid(length, n, closed), points, e, nn, b, kappa, tau,
                      length, closed, origin)


def _plane_curve_from_uniform(points, length, closed):
    if closed:
        points = np.vstack([points, points[:1]])
    n = len(points) - 1
    s = np.arange(n + 1) * (length / n)
    d1 = derivative(points, length / n, 1)
    theta = np.unwrap(np.arctan2(d1[:, 1], d1[:, 0]))
    pc = PlaneCurve(s, points, np.zeros(len(points)), length, closed, theta)
    return PlaneCurve(s, points, pc.measured_curvature(), length, closed, theta)


def sample_parametric(c: Callable, dc: Callable, t0, t1, n=DEFAULT_N, closed=False,
                      origin=0.0, tol: Tolerances = DEFAULT_TOL, ghosts=4):
    """Sample ``c(t)`` at equal arc-length steps and build its curve object.

    For arcs, ``ghosts`` extra samples are taken beyond each end (``c`` must
    be defined there) so the Frenet data uses central stencils throughout.
    """
    n = n if closed else _even(n)
    _, total = arclength_inverse(c, dc, t0, t1, np.array([0.0]))
    if total < tol.len:
        raise DegenerateCurve("curve has zero length")
    h = total / n
    if closed or not ghosts:
        k = np.arange(n) if closed else np.arange(n + 1)
        t, total = arclength_inverse(c, dc, t0, t1, k * h)
        pts = np.asarray(c(t), dtype=float)
        if pts.shape[1] == 2:
            return _plane_curve_from_uniform(pts, total, closed)
        return _space_curve_from_uniform(pts, total, closed, origin, tol)
    tt = np.linspace(t0, t1, 257)
    vmin = np.linalg.norm(dc(tt), axis=-1).min()
    dt = (ghosts + 2) * h / vmin
    _, pre = arclength_inverse(c, dc, t0 - dt, t0, np.array([0.0]))
    k = np.arange(-ghosts, n + ghosts + 1)
    t, _ = arclength_inverse(c, dc, t0 - dt, t1 + dt, pre + k * h, panels=8 * len(k))
    pts = np.asarray(c(t), dtype=float)
    if pts.shape[1] == 2:
        return _plane_curve_from_uniform(pts[ghosts:-ghosts], total, False)
    e, nn, b, kappa, tau = frenet_from_samples(pts, h, False, tol)
    g = slice(ghosts, -ghosts)
    return SpaceCurve(_grid(total, n, False), pts[g], e[g], nn[g], b[g], kappa[g], tau[g],
                      total, False, origin)


def resample_by_arclength(points, target_n=DEFAULT_N, closed=False,
                          tol: Tolerances = DEFAULT_TOL):
    """Resample an ordered point list at equal arc-length steps.

    A quintic spline in chord length (periodic when ``closed``) stands in for
    the underlying smooth curve.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[0] < 4:
        raise DegenerateCurve("need at least 4 input points")
    if closed and np.allclose(P[0], P[-1]):
        P = P[:-1]
    Q = np.vstack([P, P[:1]]) if closed else P
    chords = np.linalg.norm(np.diff(Q, axis=0), axis=1)
    if np.any(chords == 0):
        raise DegenerateCurve("consecutive points coincide")
    if chords.sum() < tol.len:
        raise DegenerateCurve("curve has zero length")
    u = np.concatenate([[0.0], np.cumsum(chords)])
    k = 5 if len(Q) > 5 else 3
    spl = make_interp_spline(u, Q, k=k, bc_type="periodic" if closed else None)
    dspl = spl.derivative()
    return sample_parametric(spl, dspl, 0.0, u[-1], target_n, closed, tol=tol, ghosts=0)


def curve_from_kappa_tau(kappa: Callable, tau: Callable, l, initial_frame=None,
                         closed=False, n=DEFAULT_N, substeps=4,
                         tol: Tolerances = DEFAULT_TOL):
    """Integrate the Frenet-Serret system with fixed-step RK4.

    ``initial_frame = (point, e, n, b)`` is placed at ``s = 0`` (the midpoint
    for interval curves, the start for closed ones). The stored curvature and
    torsion are the inputs sampled on the grid; the frame is the integrated one.
    """
    if initial_frame is None:
        initial_frame = (np.zeros(3), np.eye(3)[0], np.eye(3)[1], np.eye(3)[2])
    x0, e0, n0, b0 = (np.asarray(v, dtype=float) for v in initial_frame)
    F0 = np.stack([e0, n0, b0])
    if np.abs(F0 @ F0.T - np.eye(3)).max() > tol.frame or np.linalg.det(F0) < 0:
        raise NonOrthonormalFrame("initial frame must be right-handed orthonormal")
    n = n if closed else _even(n)
    s = _grid(l, n, closed)
    k_s = np.asarray(kappa(s), dtype=float) * np.ones_like(s)
    t_s = np.asarray(tau(s), dtype=float) * np.ones_like(s)
    if np.any(k_s <= 0):
        raise NonPositiveKappa("kappa must be positive on the domain")

    def rhs(u, y):
        k = kappa(u)
        t = tau(u)
        e, nn, b = y[3:6], y[6:9], y[9:12]
        return np.concatenate([e, k * nn, -k * e + t * b, -t * nn])

    y0 = np.concatenate([x0, e0, n0, b0])
    hh = l / n / substeps
    if closed:
        Y = rk4(rhs, y0, 0.0, hh, n * substeps)[::substeps]
        end = Y[-1]
        Y = Y[:-1]
        if np.linalg.norm(end[:3] - x0) > tol.periodic * l:
            raise IntegrationFailure("integrated curve does not close up")
    else:
        half = n // 2
        fwd = rk4(rhs, y0, 0.0, hh, half * substeps)[::substeps]
        bwd = rk4(rhs, y0, 0.0, -hh, half * substeps)[::substeps]
        Y = np.vstack([bwd[::-1], fwd[1:]])
    if not np.all(np.isfinite(Y)):
        raise IntegrationFailure("non-finite state in Frenet integration")
    pts = Y[:, :3]
    e = Y[:, 3:6]
    e = e / np.linalg.norm(e, axis=1)[:, None]
    nn = Y[:, 6:9] - np.einsum("ij,ij->i", Y[:, 6:9], e)[:, None] * e
    nn /= np.linalg.norm(nn, axis=1)[:, None]
    b = np.cross(e, nn)
    return SpaceCurve(s, pts, e, nn, b, k_s, t_s, float(l), closed)


def plane_curve_from_mu(mu: Callable, l, initial=((0.0, 0.0), 0.0), n=DEFAULT_N,
                        s_start=0.0, periodic_extension=False, substeps=4):
    """Develop a plane curve from its signed curvature by RK4 on (theta, x, y)."""
    (x0, y0), th0 = initial
    hh = l / n / substeps

    def rhs(u, y):
        return np.array([mu(u), np.cos(y[0]), np.sin(y[0])])

    Y = rk4(rhs, [th0, x0, y0], s_start, hh, n * substeps)[::substeps]
    if not np.all(np.isfinite(Y)):
        raise IntegrationFailure("non-finite state while developing the plane curve")
    s = s_start + np.arange(n + 1) * (l / n)
    m = np.array([mu(u) for u in s], dtype=float)
    return PlaneCurve(s, Y[:, 1:], m, float(l), periodic_extension, Y[:, 0])


def is_simple(curve: PlaneCurve) -> bool:
    """Segment-intersection test on the polyline of a plane curve."""
    from shapely.geometry import LineString, LinearRing

    pts = np.asarray(curve.points)
    if np.linalg.norm(pts[0] - pts[-1]) < 1e-9 * curve.length:
        return LinearRing(pts[:-1]).is_simple
    return LineString(pts).is_simple


# --- reversal and shifting --------------------------------------------------

def reverse_curve(curve):
    """Orientation reversal ``s -> -s``: e and b flip, n, kappa, tau are kept."""
    if isinstance(curve, PlaneCurve):
        pts = curve.points[::-1]
        return PlaneCurve(curve.s, pts.copy(), -curve.mu[::-1], curve.length,
                          curve.periodic_extension,
                          None if curve.theta is None else curve.theta[::-1] + np.pi)
    if curve.closed:
        idx = (-np.arange(len(curve.s))) % len(curve.s)
    else:
        idx = np.arange(len(curve.s))[::-1]
    return SpaceCurve(curve.s, curve.points[idx], -curve.e[idx], curve.n[idx],
                      -curve.b[idx], curve.kappa[idx], curve.tau[idx],
                      curve.length, curve.closed, -curve.origin)


def shift_curve(curve: SpaceCurve, b):
    """Closed curve reparametrized as ``s -> c(s + b)`` (spectral interpolation)."""
    if not curve.closed:
        raise ValueError("shift is only defined for closed curves")
    d = b / curve.h
    pts = periodic_reindex(curve.points, 1, d)
    e = periodic_reindex(curve.e, 1, d)
    nn = periodic_reindex(curve.n, 1, d)
    e /= np.linalg.norm(e, axis=1)[:, None]
    nn -= np.einsum("ij,ij->i", nn, e)[:, None] * e
    nn /= np.linalg.norm(nn, axis=1)[:, None]
    return SpaceCurve(curve.s, pts, e, nn, np.cross(e, nn),
                      periodic_reindex(curve.kappa, 1, d),
                      periodic_reindex(curve.tau, 1, d), curve.length, True)


# --- symmetry detection ------------------------------------------------------

def best_fit_plane(points):
    c = points.mean(axis=0)
    _, sv, Vt = np.linalg.svd(points - c)
    normal = Vt[-1]
    resid = np.abs((points - c) @ normal).max()
    return c, normal, resid


def _reflection(point, normal):
    R = np.eye(3) - 2 * np.outer(normal, normal)
    return Isometry3(R, 2 * np.dot(point, normal) * normal)


def detect_curve_symmetries(curve: SpaceCurve, tol: Tolerances = DEFAULT_TOL):
    """Ambient isometries mapping the curve onto itself.

    Candidate parameter actions are ``s -> -s`` for arcs and, for closed
    curves, shifts read off the preimages of one regular value of the
    curvature. Each candidate is fitted by rigid registration (both
    determinant signs) and kept if the worst residual is below tol.sym * l.
    """
    l = curve.length
    P = curve.points
    centre, normal, resid = best_fit_plane(P)
    planar = bool(np.abs(curve.tau).max() < tol.tau and resid < tol.plane * l)
    kvar = np.abs(curve.kappa - curve.kappa.mean()).max()
    circle = bool(planar and curve.closed and kvar < tol.kappa_var * curve.kappa.mean())
    plane = (centre, normal) if planar else None
    trivial = _reflection(centre, normal) if planar else None
    if circle:
        return CurveSymmetryReport((), True, True, plane, infinite=True, trivial=trivial)

    limit = tol.sym * l
    found = []
    if curve.closed:
        cands = [(1, d) for d in regular_value_shifts(curve.kappa, curve.kappa, curve.h, 1)]
        cands += [(-1, d) for d in regular_value_shifts(curve.kappa, curve.kappa, curve.h, -1)]
        for sigma, d in cands:
            d = _refine_shift(curve.kappa, curve.kappa, curve.h, sigma, d)
            if sigma == 1 and min(d, l - d) < 0.5 * curve.h:
                continue
            target = periodic_reindex(P, sigma, d / curve.h)
            for det in (1, -1):
                R, t, res = rigid_fit(P, target, det)
                if res < limit:
                    found.append(CurveSymmetry(Isometry3(R, t), sigma, d))
    else:
        for det in (1, -1):
            R, t, res = rigid_fit(P, P[::-1], det)
            if res < limit:
                found.append(CurveSymmetry(Isometry3(R, t), -1, 0.0))
    found = _dedupe(found, l)
    return CurveSymmetryReport(tuple(found), planar, False, plane, False, trivial)


def _refine_shift(fx, fy, h, sigma, d0):
    """Polish a candidate shift by minimizing the L2 mismatch nearby."""
    n = len(fx)

    def cost(d):
        return np.sum((periodic_reindex(fy, sigma, d / h) - fx) ** 2)

    r = minimize_scalar(cost, bounds=(d0 - 2 * h, d0 + 2 * h), method="bounded",
                        options={"xatol": 1e-12 * n * h})
    d = float(r.x % (n * h))
    return 0.0 if n * h - d < 1e-9 * n * h else d


def _dedupe(found, l):
    out = []
    for f in found:
        if not any(f.sigma == g.sigma and f.sign == g.sign
                   and np.allclose(f.isometry.rotation, g.isometry.rotation, atol=1e-6)
                   for g in out):
            out.append(f)
    return out
