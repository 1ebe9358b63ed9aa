"""Low-level numerics shared by the geometry modules.

Everything here works on uniformly spaced samples. Interval data uses
one-sided stencils at the ends; periodic data wraps around.
"""

from functools import lru_cache
from math import factorial

import numpy as np
from numpy.polynomial.legendre import leggauss


@lru_cache(maxsize=None)
def fd_weights(offsets, order, accuracy=None):
    """Finite-difference weights for the ``order``-th derivative on integer ``offsets``.

    With ``accuracy`` set, only moments up to ``order + accuracy - 1`` are
    matched and the minimum-norm weights are returned (less rounding noise
    when there are spare points).
    """
    x = np.asarray(offsets, dtype=float)
    m = len(x) if accuracy is None else order + accuracy
    A = np.vander(x, m, increasing=True).T
    rhs = np.zeros(m)
    rhs[order] = factorial(order)
    if m == len(x):
        return tuple(np.linalg.solve(A, rhs))
    return tuple(np.linalg.lstsq(A, rhs, rcond=None)[0])


def _central_width(order):
    # smallest odd stencil giving 4th-order accuracy
    return 2 * ((order + 3) // 2) + 1


def derivative(y, h, order=1, periodic=False):
    """4th-order accurate derivative of uniformly sampled data along axis 0."""
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    w = _central_width(order)
    half = w // 2
    central = np.array(fd_weights(tuple(range(-half, half + 1)), order))
    out = np.zeros_like(y)
    if periodic:
        for k, c in zip(range(-half, half + 1), central):
            out += c * np.roll(y, -k, axis=0)
        return out / h**order
    if n < order + 4:
        raise ValueError("too few samples for a 4th-order stencil")
    for k, c in zip(range(-half, half + 1), central):
        out[half:n - half] += c * y[half + k:n - half + k]
    # one-sided windows at both ends, two spare points for noise control
    width = min(order + 6, n)
    for i in list(range(half)) + list(range(n - half, n)):
        start = min(max(i - width // 2, 0), n - width)
        offs = tuple(range(start - i, start - i + width))
        wts = np.array(fd_weights(offs, order, 4))
        out[i] = np.tensordot(wts, y[start:start + width], axes=(0, 0))
    return out / h**order


def spectral_shift(y, shift):
    """Evaluate periodic samples ``y`` at ``i + shift`` (shift in samples)."""
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    Y = np.fft.rfft(y, axis=0)
    k = np.arange(Y.shape[0])
    phase = np.exp(2j * np.pi * k * shift / n)
    phase = phase.reshape((-1,) + (1,) * (y.ndim - 1))
    return np.fft.irfft(Y * phase, n=n, axis=0)


def periodic_reindex(y, sigma, shift):
    """Samples of ``s -> y(sigma*s + shift)`` on the same periodic grid (shift in samples)."""
    z = spectral_shift(y, shift)
    if sigma < 0:
        # y(-s + shift) = z(-s): index i -> -i mod n
        idx = (-np.arange(len(z))) % len(z)
        z = z[idx]
    return z


def rk4(f, y0, s0, h, n_steps):
    """Classical fixed-step RK4; returns the n_steps + 1 states."""
    y = np.array(y0, dtype=float)
    out = np.empty((n_steps + 1,) + y.shape)
    out[0] = y
    s = s0
    for i in range(n_steps):
        k1 = f(s, y)
        k2 = f(s + h / 2, y + h / 2 * k1)
        k3 = f(s + h / 2, y + h / 2 * k2)
        k4 = f(s + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        s = s0 + (i + 1) * h
        out[i + 1] = y
    return out


def rigid_fit(X, Y, det_sign=None):
    """Least-squares ``R, t`` with ``R @ x + t ~ y``.

    ``det_sign`` fixes det(R) to +1 or -1; ``None`` picks whichever fits best.
    Returns ``(R, t, max_residual)``.
    """
    X = np.asarray(X, dtype=float).reshape(-1, X.shape[-1])
    Y = np.asarray(Y, dtype=float).reshape(-1, Y.shape[-1])
    if det_sign is None:
        fits = [rigid_fit(X, Y, s) for s in (1, -1)]
        return min(fits, key=lambda f: f[2])
    xm, ym = X.mean(axis=0), Y.mean(axis=0)
    H = (X - xm).T @ (Y - ym)
    U, _, Vt = np.linalg.svd(H)
    D = np.eye(X.shape[1])
    D[-1, -1] = det_sign * np.sign(np.linalg.det(Vt.T @ U.T))
    R = Vt.T @ D @ U.T
    t = ym - R @ xm
    res = np.linalg.norm(X @ R.T + t - Y, axis=1).max()
    return R, t, res


def arclength_inverse(c, dc, t0, t1, s_targets, panels=None):
    """Parameters ``t`` at which the arc length from ``t0`` equals ``s_targets``.

    ``c``/``dc`` evaluate the curve and its derivative on arrays of t.
    Composite 8-point Gauss-Legendre for the length, Newton for the inversion.
    Returns ``(t, total_length)``.
    """
    panels = panels or max(4 * len(s_targets), 512)
    xg, wg = leggauss(8)
    edges = np.linspace(t0, t1, panels + 1)

    def speed(t):
        return np.linalg.norm(dc(t), axis=-1)

    def seg_len(a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        mid, half = (a + b) / 2, (b - a) / 2
        nodes = mid[..., None] + half[..., None] * xg
        return half * (speed(nodes.ravel()).reshape(nodes.shape) @ wg)

    cum = np.concatenate([[0.0], np.cumsum(seg_len(edges[:-1], edges[1:]))])
    total = cum[-1]
    s = np.clip(np.asarray(s_targets, dtype=float), 0.0, total)
    t = np.interp(s, cum, edges)
    for _ in range(6):
        j = np.clip(np.searchsorted(edges, t, side="right") - 1, 0, panels - 1)
        S = cum[j] + seg_len(edges[j], t)
        t = np.clip(t - (S - s) / speed(t), t0, t1)
    return t, total


def regular_value_shifts(fx, fy, h, sigma, span=None):
    """Candidate shifts ``d`` (length units) with ``fy(sigma*s + d) ~ fx(s)`` on a torus.

    A regular value of ``fx`` is picked; every preimage of it under ``fy``
    whose slope sign is compatible with ``sigma`` yields one candidate.
    This mirrors the finiteness argument for symmetries of closed curves:
    a matching reparametrization must carry preimages to preimages.
    """
    fx = np.asarray(fx, dtype=float)
    fy = np.asarray(fy, dtype=float)
    n = len(fx)
    lo, hi = fx.min(), fx.max()
    if hi - lo <= 0:
        return []
    dfx = derivative(fx, h, periodic=True)
    dfy = derivative(fy, h, periodic=True)
    best = None
    for frac in np.linspace(0.2, 0.8, 13):
        r = lo + frac * (hi - lo)
        px = _crossings(fx, dfx, r)
        py = _crossings(fy, dfy, r)
        if not px or not py:
            continue
        slope = min(abs(p[1]) for p in px + py)
        if best is None or slope > best[0]:
            best = (slope, px, py)
    if best is None:
        return []
    _, px, py = best
    p0, sl0 = px[0]
    out = []
    for q, slq in py:
        if np.sign(slq) != np.sign(sigma * sl0):
            continue
        out.append(((q - sigma * p0) * h) % (n * h))
    return out


def _crossings(f, df, r):
    """Fractional indices where periodic samples ``f`` cross ``r``, with local slope."""
    g = f - r
    gn = np.roll(g, -1)
    idx = np.nonzero((g == 0) | (g * gn < 0))[0]
    out = []
    for i in idx:
        denom = g[i] - gn[i]
        frac = g[i] / denom if denom != 0 else 0.0
        slope = df[i] + frac * (df[(i + 1) % len(f)] - df[i])
        out.append((i + frac, slope))
    return out
