"""Zero-dispersion limit and small-dispersion solutions from the explicit Toeplitz formula.

The k-th Fourier coefficient of ``Pi u`` is ``<(U S*)^k Pi u0, 1>`` with
``U = exp(i t L)`` and ``L = 2 eps D - 2 T_{u0}``; for ``eps > 0`` it
carries the extra phase ``exp(i eps k t)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fourier import HardyCoeffs, fourier_coeffs, reconstruct_real, szego_project
from .toeplitz import bo_generator, build_propagator, propagate

TRUST_FRACTION = 1 / 8


def k_trust(K, fraction=TRUST_FRACTION):
    """Highest Fourier mode trusted at operator truncation ``K``."""
    return int(K * fraction)


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    t: float
    coeffs: np.ndarray
    K: int
    k_trust: int

    def to_function(self):
        return reconstruct_real(HardyCoeffs(self.coeffs))


@lru_cache(maxsize=16)
def _propagator(u0, eps, K):
    label = f"2*{eps}*D - 2*T_u (K={K})"
    return build_propagator(bo_generator(u0, eps, K), label)


@lru_cache(maxsize=16)
def _projected_datum(u0, K):
    return szego_project(fourier_coeffs(u0, K)).c


def _check_range(k_max, K, trust):
    limit = k_trust(K, trust)
    if k_max > limit:
        raise ValueError(f"mode {k_max} beyond trusted range {limit} for K={K}")


def _walk(P, t, c0, k_max):
    # c_k = <(U S*)^k c0, 1> for k = 0..k_max in one sweep
    out = np.empty(k_max + 1, dtype=complex)
    h = c0
    out[0] = h[0]
    for k in range(1, k_max + 1):
        h = np.concatenate((h[1:], [0.0]))
        h = propagate(P, t, h).c
        out[k] = h[0]
    return out


def zd_coefficients(u0, t, k_max, K, trust=TRUST_FRACTION):
    """Fourier coefficients ``0..k_max`` of ``Pi ZD[u0](t)``."""
    _check_range(k_max, K, trust)
    return _walk(_propagator(u0, 0.0, K), t, _projected_datum(u0, K), k_max)


def zd_coefficient(u0, t, k, K, trust=TRUST_FRACTION):
    if k < 0:
        raise ValueError("k must be non-negative")
    return complex(zd_coefficients(u0, t, k, K, trust)[k])


def bo_epsilon_coefficients(u0, eps, t, k_max, K, trust=TRUST_FRACTION):
    """Fourier coefficients ``0..k_max`` of ``Pi u^eps(t)``."""
    if eps <= 0:
        raise ValueError("eps must be positive; use zd_coefficients for eps = 0")
    _check_range(k_max, K, trust)
    c = _walk(_propagator(u0, float(eps), K), t, _projected_datum(u0, K), k_max)
    return c * np.exp(1j * eps * t * np.arange(k_max + 1))


def bo_epsilon_coefficient(u0, eps, t, k, K, trust=TRUST_FRACTION):
    return complex(bo_epsilon_coefficients(u0, eps, t, k, K, trust)[k])


def spectral_profile(u0, t, K, k_max=None, eps=0.0, trust=TRUST_FRACTION):
    k_max = k_trust(K, trust) if k_max is None else k_max
    if eps:
        c = bo_epsilon_coefficients(u0, eps, t, k_max, K, trust)
    else:
        c = zd_coefficients(u0, t, k_max, K, trust)
    return SpectralProfile(t, c, K, k_trust(K, trust))


def zd_profile(u0, t, K, k_max, trust=TRUST_FRACTION):
    """``ZD[u0](t)`` truncated to modes ``|k| <= k_max``."""
    return reconstruct_real(HardyCoeffs(zd_coefficients(u0, t, k_max, K, trust)))


def bo_epsilon_profile(u0, eps, t, K, k_max, trust=TRUST_FRACTION):
    return reconstruct_real(HardyCoeffs(bo_epsilon_coefficients(u0, eps, t, k_max, K, trust)))


def resolvent_hardy(u0, t, z, K):
    """``F_ZD(t, z) = <(I - z U S*)^{-1} Pi u0, 1>`` by a dense solve."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"|z| = {abs(z)} must be < 1")
    P = _propagator(u0, 0.0, K)
    U = P.matrix(t)
    Sstar = np.eye(K + 1, k=1)
    M = np.eye(K + 1) - z * (U @ Sstar)
    try:
        f = np.linalg.solve(M, _projected_datum(u0, K))
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"resolvent solve failed at z={z}") from exc
    return complex(f[0])


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    k_max: int
    max_abs_error: float


def epsilon_sweep(u0, t, k_max, epsilons, K, perturbation=None, trust=TRUST_FRACTION):
    """Distance of the eps-dispersion coefficients to the zero-dispersion ones.

    ``perturbation`` is an optional trig function ``w``; row ``eps`` then uses
    the datum ``u0 + eps * w`` while the limit is taken with ``u0``.
    """
    eps = [float(e) for e in epsilons]
    if not eps:
        raise ValueError("no epsilons given")
    if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilons must be positive and strictly decreasing")
    ref = zd_coefficients(u0, t, k_max, K, trust)
    rows = []
    for e in eps:
        datum = u0 if perturbation is None else u0 + perturbation.scaled(e)
        c = bo_epsilon_coefficients(datum, e, t, k_max, K, trust)
        rows.append(SweepRow(e, k_max, float(np.max(np.abs(c - ref)))))
    return rows
