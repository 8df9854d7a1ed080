"""Real functions on the torus R/2piZ, Fourier coefficients and the Szegő projector.

All inner products use the normalized measure dx/2pi.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

TWO_PI = 2.0 * np.pi

# imaginary leakage allowed in the mean coefficient of a "real" Hardy element
TAU_IM = 1e-8

# oversampling used to evaluate trig-interpolated grid data off-grid
_UPSAMPLE = 8


@dataclass(frozen=True)
class TorusFunction:
    """A real 2pi-periodic function.

    Two variants:

    * ``trig``: ``mean + sum_j cos[j-1] cos(jx) + sin[j-1] sin(jx)`` (exact);
    * ``grid``: samples at ``x_i = 2 pi i / N`` with ``N`` a power of two,
      interpolated either trigonometrically or piecewise linearly.

    Instances are immutable and hashable, so they can key caches.
    """

    kind: str
    mean: float = 0.0
    cos: tuple = ()
    sin: tuple = ()
    values: tuple = ()
    interp: str = "trig"

    def __post_init__(self):
        if self.kind == "trig":
            n = max(len(self.cos), len(self.sin))
            object.__setattr__(self, "cos", tuple(float(a) for a in self.cos) + (0.0,) * (n - len(self.cos)))
            object.__setattr__(self, "sin", tuple(float(b) for b in self.sin) + (0.0,) * (n - len(self.sin)))
            object.__setattr__(self, "mean", float(self.mean))
        elif self.kind == "grid":
            n = len(self.values)
            if n < 4 or n & (n - 1):
                raise ValueError(f"grid size must be a power of two >= 4, got {n}")
            if self.interp not in ("trig", "linear"):
                raise ValueError(f"unknown interpolation {self.interp!r}")
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        else:
            raise ValueError(f"unknown TorusFunction kind {self.kind!r}")

    # constructors ---------------------------------------------------------

    @classmethod
    def trig(cls, mean=0.0, cos=(), sin=()):
        return cls("trig", mean=mean, cos=tuple(cos), sin=tuple(sin))

    @classmethod
    def constant(cls, c):
        return cls("trig", mean=c)

    @classmethod
    def grid(cls, values, interp="trig"):
        return cls("grid", values=tuple(np.asarray(values, dtype=float)), interp=interp)

    @classmethod
    def sample(cls, func, n, interp="trig"):
        """Grid variant obtained by sampling ``func`` at ``2 pi i / n``."""
        return cls.grid(func(grid_points(n)), interp=interp)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ValueError("datum must be a JSON object")
        kind = data.get("type")
        if kind == "trig":
            return cls.trig(data.get("mean", 0.0), data.get("cos", []), data.get("sin", []))
        if kind == "grid":
            return cls.grid(data["values"], data.get("interp", "trig"))
        raise ValueError(f"unknown datum type {kind!r}")

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self):
        if self.kind == "trig":
            return {"type": "trig", "mean": self.mean, "cos": list(self.cos), "sin": list(self.sin)}
        return {"type": "grid", "values": list(self.values), "interp": self.interp}

    # properties -----------------------------------------------------------

    @property
    def degree(self):
        """Highest Fourier mode (trig) or Nyquist bound (grid)."""
        if self.kind == "trig":
            nz = [j + 1 for j, (a, b) in enumerate(zip(self.cos, self.sin)) if a or b]
            return max(nz, default=0)
        return len(self.values) // 2

    @cached_property
    def _samples(self):
        return np.asarray(self.values, dtype=float)

    @cached_property
    def _trig_spline(self):
        # FFT zero-padding then a periodic cubic through the oversampled points
        v = self._samples
        n = v.size
        m = _UPSAMPLE * n
        vh = np.fft.rfft(v)
        vh[-1] *= 0.5  # split the Nyquist mode symmetrically
        fine = np.fft.irfft(vh, m) * _UPSAMPLE
        dh = vh * 1j * np.arange(vh.size)
        dh[-1] = 0.0
        dfine = np.fft.irfft(dh, m) * _UPSAMPLE
        xs = np.linspace(0.0, TWO_PI, m + 1)
        return (CubicSpline(xs, np.append(fine, fine[0]), bc_type="periodic"),
                CubicSpline(xs, np.append(dfine, dfine[0]), bc_type="periodic"))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "trig":
            out = np.full(x.shape, self.mean)
            if not self.cos:
                return out
            # angle-addition recurrence: two transcendental calls per point
            c1, s1 = np.cos(x), np.sin(x)
            c, s = c1, s1
            for j, (a, b) in enumerate(zip(self.cos, self.sin), start=1):
                if j > 1:
                    c, s = c * c1 - s * s1, s * c1 + c * s1
                if a:
                    out += a * c
                if b:
                    out += b * s
            return out
        xm = np.mod(x, TWO_PI)
        if self.interp == "linear":
            v = self._samples
            xp = np.linspace(0.0, TWO_PI, v.size + 1)
            return np.interp(xm, xp, np.append(v, v[0]))
        return self._trig_spline[0](xm)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "trig":
            out = np.zeros(x.shape)
            for j, (a, b) in enumerate(zip(self.cos, self.sin), start=1):
                if a:
                    out -= j * a * np.sin(j * x)
                if b:
                    out += j * b * np.cos(j * x)
            return out
        xm = np.mod(x, TWO_PI)
        if self.interp == "linear":
            v = self._samples
            n = v.size
            h = TWO_PI / n
            slopes = (np.roll(v, -1) - v) / h
            idx = np.minimum((xm / h).astype(int), n - 1)
            return slopes[idx]
        return self._trig_spline[1](xm)

    def extrema(self, n_samples=4096):
        """Return ``(inf u, sup u)`` by dense sampling plus local refinement."""
        if self.kind == "grid" and self.interp == "linear":
            v = self._samples
            return float(v.min()), float(v.max())
        if self.kind == "trig" and self.degree == 0:
            return self.mean, self.mean
        return _extrema(self, n_samples)

    def sup_norm(self):
        lo, hi = self.extrema()
        return max(abs(lo), abs(hi))

    def derivative_extrema(self, n_samples=4096):
        """Return ``(inf u', sup u')``; needs a C^1 function."""
        if self.kind == "grid" and self.interp == "linear":
            raise ValueError("derivative extrema need a continuously differentiable function")
        if self.kind == "trig" and self.degree == 0:
            return 0.0, 0.0
        return _extrema(_Derivative(self), n_samples)

    def shifted(self, a):
        """The translate ``x -> u(x - a)`` (trig variant only)."""
        if self.kind != "trig":
            raise ValueError("shifted() is only defined for trig functions")
        cos, sin = [], []
        for j, (c, s) in enumerate(zip(self.cos, self.sin), start=1):
            ca, sa = np.cos(j * a), np.sin(j * a)
            cos.append(c * ca - s * sa)
            sin.append(c * sa + s * ca)
        return TorusFunction.trig(self.mean, cos, sin)

    def __add__(self, other):
        if not isinstance(other, TorusFunction):
            return NotImplemented
        if self.kind == other.kind == "trig":
            n = max(len(self.cos), len(other.cos))
            pad = lambda t: np.pad(np.asarray(t, float), (0, n - len(t)))
            return TorusFunction.trig(self.mean + other.mean,
                                      pad(self.cos) + pad(other.cos),
                                      pad(self.sin) + pad(other.sin))
        raise ValueError("only trig functions can be added exactly")

    def scaled(self, c):
        if self.kind == "trig":
            return TorusFunction.trig(c * self.mean, [c * a for a in self.cos], [c * b for b in self.sin])
        return TorusFunction.grid(c * self._samples, self.interp)


@dataclass(frozen=True)
class _Derivative:
    f: TorusFunction

    def __call__(self, x):
        return self.f.derivative(x)


def _extrema(f, n_samples):
    x = grid_points(n_samples)
    v = f(x)
    h = TWO_PI / n_samples
    out = []
    for sign in (1.0, -1.0):
        i = int(np.argmin(sign * v))
        best = sign * v[i]
        res = minimize_scalar(lambda s: sign * float(f(s)), bounds=(x[i] - h, x[i] + h),
                              method="bounded", options={"xatol": 1e-12})
        out.append(sign * min(best, res.fun))
    return out[0], out[1]


def grid_points(n):
    return TWO_PI * np.arange(n) / n


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Coefficients ``u_hat(k)`` for ``|k| <= K``; stored at index ``k + K``."""

    coeffs: np.ndarray
    K: int

    def __getitem__(self, k):
        if abs(k) > self.K:
            return 0.0j
        return self.coeffs[k + self.K]

    def nonnegative(self):
        return self.coeffs[self.K:]


@dataclass(frozen=True, eq=False)
class HardyCoeffs:
    """Truncated element of the Hardy space: ``c[k]`` for ``k = 0..K``."""

    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(self.c, dtype=complex))

    @property
    def K(self):
        return self.c.size - 1

    def norm(self):
        return float(np.linalg.norm(self.c))


def fourier_coeffs(u, K):
    """Fourier coefficients of ``u`` for ``|k| <= K``.

    Exact for trig functions. Grid functions go through the discrete
    transform and must have at least ``2K + 1`` samples.
    """
    if K < 1:
        raise ValueError("truncation order K must be >= 1")
    out = np.zeros(2 * K + 1, dtype=complex)
    if u.kind == "trig":
        out[K] = u.mean
        for j, (a, b) in enumerate(zip(u.cos, u.sin), start=1):
            if j > K:
                break
            out[K + j] = 0.5 * (a - 1j * b)
            out[K - j] = 0.5 * (a + 1j * b)
        return FourierSeries(out, K)
    v = u._samples
    n = v.size
    if n < 2 * K + 1:
        raise ValueError(f"grid of {n} samples aliases modes up to K={K}; need >= {2 * K + 1}")
    vh = np.fft.fft(v) / n
    out[K:] = vh[: K + 1]
    out[:K] = vh[n - K:]
    return FourierSeries(out, K)


def szego_project(f):
    """Drop the negative frequencies."""
    return HardyCoeffs(f.nonnegative().copy())


def reconstruct_real(h, tau_im=TAU_IM):
    """Recover the real function ``g = Pi g + conj(Pi g) - <Pi g, 1>``."""
    c = h.c
    if abs(c[0].imag) > tau_im:
        raise ValueError(f"mean coefficient has imaginary part {c[0].imag:.3e}; "
                         "the Hardy element is not the projection of a real function")
    return TorusFunction.trig(c[0].real, 2.0 * c[1:].real, -2.0 * c[1:].imag)


def inner_product(f, g):
    if f.K != g.K:
        raise ValueError(f"truncation orders differ: {f.K} != {g.K}")
    return complex(np.vdot(g.c, f.c))


def l2_norm_sq(u, n=4096):
    """Normalized ``||u||^2`` by the periodic trapezoid rule."""
    return float(np.mean(u(grid_points(n)) ** 2))
