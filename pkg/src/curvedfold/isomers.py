"""Isomers of a developable strip: dual, inverse, inverse dual, reverse, closed families."""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .curves import SpaceCurve, reverse_curve, shift_curve
from .errors import (
    IncompatibleCurve,
    NotAdmissible,
    NotClosed,
    TorusDomain,
    UnsupportedSignChange,
)
from .numerics import derivative, periodic_reindex
from .strip import DevelopableStrip, assemble_strip, is_admissible


def _alpha_sign(strip: DevelopableStrip) -> int:
    sg = np.sign(strip.alpha)
    if np.any(sg != sg[0]):
        raise UnsupportedSignChange("first angular function changes sign along the crease")
    return int(sg[0])


def transplant(strip: DevelopableStrip, target: SpaceCurve, sign: int = 1,
               tol: Tolerances = DEFAULT_TOL) -> DevelopableStrip:
    """Strip on ``target`` with the same normalized geodesic curvature.

    Solves ``kappa_target cos(a) = mu`` sample by sample; ``sign=+1`` keeps the
    sign of the source's first angular function, ``-1`` flips it.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if len(target.s) != len(strip.s) or target.closed != strip.closed:
        raise IncompatibleCurve("target must share the sample grid of the source crease")
    if abs(target.length - strip.crease.length) > tol.len * strip.crease.length:
        raise IncompatibleCurve("target and source crease lengths differ")
    sg = _alpha_sign(strip)
    mu = strip.mu
    gap = target.kappa - tol.kappa - np.abs(mu)
    if np.any(gap <= 0):
        k = int(np.argmin(gap))
        raise IncompatibleCurve(
            f"|mu| >= kappa of target at s={target.s[k]:.6g} (mu={mu[k]:.6g}, kappa={target.kappa[k]:.6g})")
    a = np.arccos(np.clip(mu / target.kappa, -1.0, 1.0)) * (sign * sg)
    ap = derivative(a, target.h, 1, target.closed)
    return assemble_strip(target, a, ap, strip.width, mu=mu, tol=tol)


def dual(strip: DevelopableStrip, tol: Tolerances = DEFAULT_TOL) -> DevelopableStrip:
    """Same crease, first angular function negated."""
    return assemble_strip(strip.crease, -strip.alpha, -strip.alpha_prime, strip.width,
                          mu=strip.mu, tol=tol)


def inverse(strip: DevelopableStrip, tol: Tolerances = DEFAULT_TOL) -> DevelopableStrip:
    """Strip over the reversed crease with the same ``mu`` and same sign of alpha."""
    if not is_admissible(strip, tol):
        raise NotAdmissible("inverse needs max mu < min kappa")
    return transplant(strip, reverse_curve(strip.crease), 1, tol)


def inverse_dual(strip: DevelopableStrip, tol: Tolerances = DEFAULT_TOL) -> DevelopableStrip:
    return dual(inverse(strip, tol), tol)


def reverse_strip(strip: DevelopableStrip, tol: Tolerances = DEFAULT_TOL) -> DevelopableStrip:
    """The same surface parametrized from the other end: ``f(-u, v)``."""
    if strip.closed:
        raise TorusDomain("reverse is defined here for interval creases only")
    return assemble_strip(reverse_curve(strip.crease), -strip.alpha[::-1],
                          strip.alpha_prime[::-1], strip.width, mu=strip.mu[::-1], tol=tol)


@dataclass(frozen=True, eq=False)
class IsomerQuartet:
    f: DevelopableStrip
    f_dual: DevelopableStrip
    f_inv: DevelopableStrip
    f_inv_dual: DevelopableStrip

    names = ("F", "F_dual", "F_inv", "F_inv_dual")

    @property
    def members(self):
        return (self.f, self.f_dual, self.f_inv, self.f_inv_dual)

    def right_matrix(self, tol: Tolerances = DEFAULT_TOL):
        m = self.members
        return np.array([[right_equivalent(x, y, tol) for y in m] for x in m])

    def n_right_classes(self, tol: Tolerances = DEFAULT_TOL):
        return count_classes(self.right_matrix(tol))


def isomer_quartet(strip: DevelopableStrip, tol: Tolerances = DEFAULT_TOL) -> IsomerQuartet:
    inv = inverse(strip, tol)
    return IsomerQuartet(strip, dual(strip, tol), inv, dual(inv, tol))


def count_classes(matrix) -> int:
    """Number of connected components of a boolean relation matrix."""
    M = np.asarray(matrix, dtype=bool)
    n = len(M)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if M[i, j] or M[j, i]:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(n)})


def right_equivalent(f: DevelopableStrip, g: DevelopableStrip,
                     tol: Tolerances = DEFAULT_TOL) -> bool:
    """Compare normal forms sharing a base point: ``g == f`` or ``g == f`` reversed."""
    if len(f.s) != len(g.s) or f.closed != g.closed:
        return False
    pf, pg = f.crease.points, g.crease.points
    scale = tol.len * f.crease.length
    if np.abs(pf - pg).max() < scale:
        return bool(np.abs(f.alpha - g.alpha).max() < tol.beta)
    if f.closed:
        idx = (-np.arange(len(pf))) % len(pf)
        if np.abs(pf[idx] - pg).max() < scale:
            return bool(np.abs(-f.alpha[idx] - g.alpha).max() < tol.beta)
        return False
    if np.abs(pf[::-1] - pg).max() < scale:
        return bool(np.abs(reverse_strip(f, tol).alpha - g.alpha).max() < tol.beta)
    return False


# --- closed creases -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClosedFamilyMember:
    base: DevelopableStrip
    index: int
    shift: float
    strip: DevelopableStrip

    def relation_residual(self):
        """``max |kappa(+-s + b) cos(alpha) - mu_F(s)|`` for the member's crease."""
        c = self.strip.crease
        return float(np.abs(c.kappa * np.cos(self.strip.alpha) - self.base.mu).max())


def closed_family(F: DevelopableStrip, i: int, b: float,
                  tol: Tolerances = DEFAULT_TOL) -> ClosedFamilyMember:
    """Member ``F_b^i`` over the closed crease.

    Indices 1, 2 use the crease ``c(s + b)``, indices 3, 4 use ``c(-s + b)``;
    odd indices keep the sign of ``alpha_F``, even ones flip it, so that
    ``F_0^1 = F`` for either sign of ``alpha_F``.
    """
    if not F.closed:
        raise NotClosed("closed families need a closed crease")
    if i not in (1, 2, 3, 4):
        raise ValueError("index must be 1, 2, 3 or 4")
    if not is_admissible(F, tol):
        raise NotAdmissible("closed families need max mu < min kappa")
    l = F.crease.length
    b = float(b) % l
    sign = 1 if i in (1, 3) else -1
    if i in (1, 2) and b == 0.0:
        s = F if i == 1 else dual(F, tol)
        return ClosedFamilyMember(F, i, b, s)
    if i in (1, 2):
        target = shift_curve(F.crease, b)
    else:
        rev = reverse_curve(F.crease)
        target = shift_curve(rev, -b) if b else rev
    return ClosedFamilyMember(F, i, b, transplant(F, target, sign, tol))


def reindex_strip(strip: DevelopableStrip, sigma: int, d: float,
                  tol: Tolerances = DEFAULT_TOL) -> DevelopableStrip:
    """Closed strip reparametrized by ``s -> sigma s + d`` (image unchanged)."""
    if not strip.closed:
        raise NotClosed("reindexing by shifts is for closed creases")
    c = strip.crease
    if sigma < 0:
        c = reverse_curve(c)
        a, ap, mu = periodic_reindex(-strip.alpha, -1, 0), periodic_reindex(strip.alpha_prime, -1, 0), \
            periodic_reindex(strip.mu, -1, 0)
        d = -d
    else:
        a, ap, mu = strip.alpha, strip.alpha_prime, strip.mu
    if d:
        c = shift_curve(c, d)
        sh = d / strip.crease.h
        a, ap, mu = (periodic_reindex(x, 1, sh) for x in (a, ap, mu))
    return assemble_strip(c, a, ap, strip.width, mu=mu, tol=tol)
