"""Kinetic chi-representation of the zero-dispersion limit.

``AS[u0](t, x) = int chi0(x - 2ty, y) dy`` where ``chi0(x, y)`` is +1 between
0 and a positive ``u0(x)`` and -1 between a negative ``u0(x)`` and 0. The
module also carries the Fourier/Hardy forms of AS, the transport-collapse
step, its Trotter composition and a Godunov scheme used as an independent
entropy-solution reference.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fourier import TWO_PI, TorusFunction, grid_points

QUAD_TOL = 1e-7
MAX_DOUBLINGS = 20
_CHUNK = 1 << 21  # samples evaluated per batch


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class KineticDensity:
    """The sign-valued density ``f_v(x, y)`` of ``v``, supported in ``|y| <= Y``."""

    v: TorusFunction
    Y: float

    @classmethod
    def of(cls, v):
        return cls(v, v.sup_norm())

    def __call__(self, x, y):
        return chi_values(self.v(x), y)


def chi_values(vx, y):
    """chi for precomputed ``v(x)``; vectorized."""
    y = np.asarray(y, dtype=float)
    pos = (y > 0) & (vx > y)
    neg = (y < 0) & (vx < y)
    return pos.astype(np.int8) - neg.astype(np.int8)


def chi0(v, x, y):
    return int(chi_values(float(v(x)), y))


def _integration_half_width(u0):
    M = u0.sup_norm()
    return M * (1.0 + 1e-9) + 1e-12


def _constant_value(u0):
    if u0.kind == "trig":
        return None if any(u0.cos) or any(u0.sin) else float(u0.mean)
    v = u0.values
    return float(v[0]) if all(a == v[0] for a in v) else None


def as_profile(u0, t, x, n_quad=1024, tol=QUAD_TOL, max_doublings=MAX_DOUBLINGS):
    """``AS[u0](t, x)`` at every point of the array ``x``.

    Composite midpoint rule in ``y`` over ``[-Y, Y]`` with ``n_quad`` panels.
    The integrand is piecewise constant, so doubling is done locally: a panel
    is halved only while its two edges and midpoint disagree, panels with
    agreeing samples keep their (already exact) midpoint value. A point is
    accepted once successive estimates differ by less than ``tol`` and the
    width still under refinement cannot hide more than ``tol``.
    """
    if n_quad < 128:
        raise ValueError("n_quad must be >= 128")
    n_quad += n_quad % 2  # keep y = 0 on a panel edge
    x = np.atleast_1d(np.asarray(x, dtype=float))
    c = _constant_value(u0)
    if c is not None:
        # chi integrates to the constant exactly
        return np.full(x.shape, c)
    Y = _integration_half_width(u0)
    per_chunk = max(1, _CHUNK // (2 * n_quad + 1))
    out = np.empty(x.size)
    flat = x.ravel()
    for s in range(0, flat.size, per_chunk):
        out[s:s + per_chunk] = _as_chunk(u0, t, flat[s:s + per_chunk], Y, n_quad, tol, max_doublings)
    return out.reshape(x.shape)


def _as_chunk(u0, t, x, Y, n, tol, max_doublings):
    npts = x.size
    h = 2.0 * Y / n
    edges = -Y + h * np.arange(n + 1)
    edges[n // 2] = 0.0
    mids = edges[:-1] + 0.5 * np.diff(edges)
    widths = np.diff(edges)

    def chi(px, y):
        return chi_values(u0(px - 2.0 * t * y), y).astype(np.float64)

    ev = chi(x[:, None], edges[None, :])
    mv = chi(x[:, None], mids[None, :])
    # y = 0 is a known breakpoint: use one-sided values on either side of it
    evl, evr = ev[:, :-1].copy(), ev[:, 1:].copy()
    evl[:, n // 2] = chi(x, np.full(npts, 5e-324))
    evr[:, n // 2 - 1] = chi(x, np.full(npts, -5e-324))
    est = mv @ widths
    active = (evl != mv) | (evr != mv)
    pid, col = np.nonzero(active)
    # active panels: owner, left edge, width, left/mid/right values
    left = edges[col]
    width = widths[col]
    L, M, R = evl[pid, col], mv[pid, col], evr[pid, col]
    frozen = est - np.bincount(pid, weights=M * width, minlength=npts)
    done = np.zeros(npts, dtype=bool)
    prev = est
    small_steps = np.zeros(npts, dtype=int)
    for level in range(max_doublings + 1):
        spread = np.maximum(np.maximum(L, M), R) - np.minimum(np.minimum(L, M), R)
        bound = np.bincount(pid, weights=0.5 * width * spread, minlength=npts)
        has_panels = np.bincount(pid, minlength=npts) > 0
        done |= ~has_panels | ((small_steps >= 2) & (bound < tol))
        if level == max_doublings:
            # last chance: the a-priori bound alone is accepted
            done |= bound < tol
        if done.all():
            return est
        if level == max_doublings:
            break
        # retire panels of finished points, and panels whose samples agree
        keep = ~done[pid] & (spread > 0)
        retire = ~keep
        frozen += np.bincount(pid[retire], weights=(M * width)[retire], minlength=npts)
        pid, left, width, L, M, R = (a[keep] for a in (pid, left, width, L, M, R))
        # halve every active panel
        w2 = 0.5 * width
        xs = x[pid]
        Ml = chi(xs, left + 0.5 * w2)
        Mr = chi(xs, left + 1.5 * w2)
        pid = np.concatenate((pid, pid))
        left = np.concatenate((left, left + w2))
        width = np.concatenate((w2, w2))
        L, M, R = np.concatenate((L, M)), np.concatenate((Ml, Mr)), np.concatenate((M, R))
        est = frozen + np.bincount(pid, weights=M * width, minlength=npts)
        small_steps = np.where(np.abs(est - prev) < tol, small_steps + 1, 0)
        prev = est
    bad = np.flatnonzero(~done)
    raise QuadratureError(
        f"AS quadrature did not converge after {max_doublings} doublings "
        f"at {bad.size} point(s), e.g. x={x[bad[0]]:.17g}")


def as_profile_quadrature(u0, t, x, n_quad=1024, tol=QUAD_TOL, max_doublings=MAX_DOUBLINGS):
    """Scalar form of :func:`as_profile`."""
    return float(as_profile(u0, t, np.array([x]), n_quad, tol, max_doublings)[0])


def _phi(w):
    # (e^w - 1) / w, series near 0
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    small = np.abs(w) < 1e-6
    ws = w[small]
    out[small] = 1.0 + ws / 2.0 + ws * ws / 6.0 + ws ** 3 / 24.0
    wl = w[~small]
    out[~small] = np.expm1(wl) / wl
    return out


def _periodic_mean(f, n0=256, tol=1e-14, n_max=1 << 20):
    # trapezoid on the torus, doubled until two resolutions agree
    n = n0
    prev = np.mean(f(grid_points(n)))
    while n < n_max:
        n *= 2
        cur = np.mean(f(grid_points(n)))
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return complex(cur)
        prev = cur
    return complex(prev)


def as_coefficient(u0, t, k):
    """``<(1 - exp(-2itk u0)) / (2itk), q^k>``, the k-th Fourier coefficient of AS."""
    if k < 0:
        raise ValueError("k must be non-negative")
    a = -2j * t * k

    def integrand(x):
        u = u0(x)
        return u * _phi(a * u) * np.exp(-1j * k * x)

    return _periodic_mean(integrand)


def as_coefficients(u0, t, k_max):
    return np.array([as_coefficient(u0, t, k) for k in range(k_max + 1)])


def as_hardy_log(u0, t, z):
    """Hardy-space representation of AS through the principal logarithm."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"|z| = {abs(z)} must be < 1")
    if t == 0:
        raise ValueError("t = 0 is excluded; use spectral.resolvent_hardy or the Fourier series")

    def integrand(x):
        num = 1.0 - z * np.exp(-1j * (x + 2.0 * t * u0(x)))
        den = 1.0 - z * np.exp(-1j * x)
        return np.log(num / den)

    mean = _periodic_mean(lambda x: u0(x) + 0j)
    return complex(mean + _periodic_mean(integrand) / (2j * t))


def _choose_interp(values):
    # trig interpolation unless its refinement overshoots the sample variation
    v = np.asarray(values)
    n = v.size
    tv = np.abs(np.diff(np.append(v, v[0]))).sum()
    fine = np.fft.irfft(np.fft.rfft(v), 4 * n) * 4
    tv_fine = np.abs(np.diff(np.append(fine, fine[0]))).sum()
    return "trig" if tv_fine <= tv * (1.0 + 1e-3) + 1e-12 else "linear"


def transport_collapse_step(v, tau, grid_n, n_quad=1024, interp=None):
    """One transport-collapse step ``v -> AS[v](tau)`` sampled on ``grid_n`` points."""
    if grid_n < 4 or grid_n & (grid_n - 1):
        raise ValueError("grid_n must be a power of two >= 4")
    x = grid_points(grid_n)
    vals = as_profile(v, tau, x, n_quad) if tau != 0 else v(x)
    if interp is None:
        interp = "linear" if (v.kind == "grid" and v.interp == "linear") else _choose_interp(vals)
    return TorusFunction.grid(vals, interp)


def trotter_entropy(u0, t, n, grid_n, n_quad=1024):
    """n-fold composition of transport-collapse steps of size ``t / n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if t < 0:
        raise ValueError("t must be non-negative")
    v = u0
    for _ in range(n):
        v = transport_collapse_step(v, t / n, grid_n, n_quad)
    return v


def _cell_averages(u0, cells, sub=8):
    h = TWO_PI / cells
    offs = (np.arange(sub) + 0.5) / sub - 0.5
    xs = grid_points(cells)[:, None] + h * offs[None, :]
    return u0(xs).mean(axis=1)


def _godunov_flux(ul, ur):
    # exact Riemann flux for f(u) = u^2 (convex, sonic point 0)
    return np.maximum(np.maximum(ul, 0.0) ** 2, np.minimum(ur, 0.0) ** 2)


def godunov_reference(u0, t, cells, cfl=0.45):
    """First-order Godunov solution of ``u_t + (u^2)_x = 0`` on the torus.

    Cells are centred at ``2 pi i / cells``; the result is a linear-interp
    grid function of the cell averages.
    """
    if cells < 64:
        raise ValueError("cells must be >= 64")
    if t < 0:
        raise ValueError("t must be non-negative")
    u = _cell_averages(u0, cells)
    dx = TWO_PI / cells
    s = 0.0
    while s < t:
        speed = 2.0 * np.max(np.abs(u))
        dt = t - s if speed == 0 else min(cfl * dx / speed, t - s)
        F = _godunov_flux(u, np.roll(u, -1))  # flux at right face of each cell
        u = u - dt / dx * (F - np.roll(F, 1))
        s += dt
    return TorusFunction.grid(u, "linear")


def riemann_datum(n=1024):
    """+1 on (0, pi), -1 on (pi, 2 pi), sampled on ``n`` points (jumps take value 0)."""
    return TorusFunction.grid(np.sign(np.sin(grid_points(n))), "linear")


def riemann_entropy_solution(t, x):
    """Entropy solution for :func:`riemann_datum`: a centred fan at 0, a standing shock at pi."""
    if not 0 <= 2 * t < np.pi:
        raise ValueError("closed form valid for 0 <= t < pi/2")
    x = np.asarray(x, dtype=float)
    xc = np.mod(x + np.pi, TWO_PI) - np.pi  # representative in [-pi, pi)
    if t == 0:
        return np.sign(xc)
    out = np.clip(xc / (2.0 * t), -1.0, 1.0)
    return np.where(xc == -np.pi, 0.0, out)


def l1_distance(f, g, n=8192):
    """Normalized L^1 distance between two callables on the torus."""
    x = grid_points(n)
    return float(np.mean(np.abs(f(x) - g(x))))
