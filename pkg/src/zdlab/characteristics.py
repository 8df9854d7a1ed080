"""Multivalued Burgers solutions by characteristics.

At a point ``(t, x)`` the branches are the roots of ``h(y) = y - u0(x - 2ty)``.
Off caustics there is an odd number of them and the zero-dispersion limit is
their alternating sum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fourier import TWO_PI

TAU_CAUSTIC = 1e-6
ROOT_XTOL = 1e-12
RESIDUAL_TOL = 1e-10
MAX_SCAN_POINTS = 1 << 22


class CausticError(ValueError):
    """Raised when a quantity is undefined because (t, x) lies on a caustic."""


class ScanResolutionError(RuntimeError):
    """Raised when the bracket scan cannot resolve the root set."""


@dataclass(frozen=True)
class BranchSet:
    t: float
    x: float
    roots: tuple
    caustic: bool
    residuals: tuple

    @property
    def n_roots(self):
        return len(self.roots)


def _scan(h, lo, hi, n):
    y = np.linspace(lo, hi, n + 1)
    v = h(y)
    s = np.sign(v)
    zero = np.flatnonzero(s == 0)
    brackets = np.flatnonzero(s[:-1] * s[1:] < 0)
    return y, v, zero, brackets


def _bisect(h, a, b, fa):
    # vectorized bisection over all brackets at once
    a, b, fa = a.copy(), b.copy(), fa.copy()
    while np.max(b - a, initial=0.0) > ROOT_XTOL:
        m = 0.5 * (a + b)
        fm = h(m)
        left = np.sign(fm) == np.sign(fa)
        a = np.where(left, m, a)
        fa = np.where(left, fm, fa)
        b = np.where(left, b, m)
    return 0.5 * (a + b)


def _roots_at(h, lo, hi, n):
    y, v, zero, br = _scan(h, lo, hi, n)
    found = list(y[zero])
    if br.size:
        found.extend(_bisect(h, y[br], y[br + 1], v[br]))
    return np.sort(np.asarray(found, dtype=float))


def branches(u0, t, x, scan_points=4096):
    """All simple roots of ``y = u0(x - 2ty)``.

    The scan resolution doubles until the root count is the same for three
    consecutive resolutions.
    """
    if scan_points < 64:
        raise ValueError("scan_points must be >= 64")
    lo_u, hi_u = u0.extrema()
    delta = 1e-6 * (1.0 + max(abs(lo_u), abs(hi_u)))
    lo, hi = lo_u - delta, hi_u + delta

    def h(y):
        return y - u0(x - 2.0 * t * y)

    n = scan_points
    counts = []
    while True:
        roots = _roots_at(h, lo, hi, n)
        counts.append(roots.size)
        if len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]:
            break
        n *= 2
        if n > MAX_SCAN_POINTS:
            raise ScanResolutionError(
                f"root count did not stabilise at (t={t}, x={x}); counts {counts}; "
                "increase scan_points")
    if roots.size == 0:
        raise ScanResolutionError(f"no root found at (t={t}, x={x})")
    gaps = np.diff(roots)
    if gaps.size and gaps.min() <= 10 * ROOT_XTOL:
        # duplicated / tangential roots: keep one, mark caustic
        keep = np.concatenate(([True], gaps > 10 * ROOT_XTOL))
        roots = roots[keep]
        tangential = True
    else:
        tangential = False
    z = x - 2.0 * t * roots
    dh = 1.0 + 2.0 * t * u0.derivative(z)
    residuals = np.abs(roots - u0(z))
    caustic = tangential or bool(np.any(np.abs(dh) < TAU_CAUSTIC))
    if np.any(residuals > RESIDUAL_TOL):
        raise ScanResolutionError(f"root residual {residuals.max():.2e} exceeds {RESIDUAL_TOL}")
    return BranchSet(float(t), float(x), tuple(roots.tolist()), caustic, tuple(residuals.tolist()))


def alternating_sum(b):
    if b.caustic:
        raise CausticError(f"alternating sum undefined on the caustic at (t={b.t}, x={b.x})")
    r = np.asarray(b.roots)
    signs = np.where(np.arange(r.size) % 2 == 0, 1.0, -1.0)
    return float(np.sum(signs * r))


def breaking_times(u0):
    """``(T_-, T_+) = (-1/sup 2u0', -1/inf 2u0')`` with infinities for monotone sides."""
    lo, hi = u0.derivative_extrema()
    t_minus = -1.0 / (2.0 * hi) if hi > 0 else -np.inf
    t_plus = -1.0 / (2.0 * lo) if lo < 0 else np.inf
    return t_minus, t_plus


def _torus_dist(a, b):
    d = np.mod(a - b, TWO_PI)
    return np.minimum(d, TWO_PI - d)


def is_caustic(u0, t, x, tol=1e-6, n_scan=8192):
    """Whether ``(t, x)`` lies within ``tol`` of an envelope of characteristics.

    Searches the critical points of ``g(z) = z + 2t u0(z)``: sign changes of
    ``g'`` and local minima of ``|g'|`` that touch zero.
    """
    if t == 0:
        return False
    z = np.linspace(0.0, TWO_PI, n_scan, endpoint=False)
    dz = TWO_PI / n_scan

    def gp(s):
        return 1.0 + 2.0 * t * u0.derivative(s)

    v = gp(z)
    vn = np.roll(v, -1)
    cand = []
    br = np.flatnonzero(np.sign(v) * np.sign(vn) < 0)
    if br.size:
        a, b = z[br], z[br] + dz
        cand.append(_bisect(gp, a, b, v[br]))
    av = np.abs(v)
    local_min = np.flatnonzero((av <= np.roll(av, 1)) & (av <= np.roll(av, -1)) & (av < 0.1))
    for i in local_min:
        cand.append([_golden_min(lambda s: abs(float(gp(s))), z[i] - dz, z[i] + dz)])
    if not cand:
        return False
    zc = np.concatenate([np.atleast_1d(c) for c in cand])
    ok = np.abs(gp(zc)) <= tol
    if not np.any(ok):
        return False
    g = zc[ok] + 2.0 * t * u0(zc[ok])
    return bool(np.any(_torus_dist(g, x) <= tol))


def _golden_min(f, a, b, tol=1e-13):
    gr = (np.sqrt(5.0) - 1.0) / 2.0
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    return 0.5 * (a + b)
