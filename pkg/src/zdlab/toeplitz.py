"""Compressed Toeplitz operators, shifts and unitary groups on the truncated Hardy space."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .fourier import HardyCoeffs, fourier_coeffs

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ToeplitzMatrix:
    """Matrix of ``T_u`` on ``span{1, q, ..., q^K}``; ``entries[j, l] = u_hat(j - l)``."""

    entries: np.ndarray
    symbol: np.ndarray  # u_hat(r) for r = -K..K
    K: int


@dataclass(frozen=True, eq=False)
class HermitianPropagator:
    """Eigendecomposition ``A = V diag(lam) V*`` used to apply ``exp(i theta A)``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    label: str = ""

    @property
    def dim(self):
        return self.eigenvalues.size

    def matrix(self, theta):
        """Dense ``exp(i theta A)``."""
        V = self.eigenvectors
        return (V * np.exp(1j * theta * self.eigenvalues)) @ V.conj().T


def _is_hermitian(A, tol=HERMITIAN_TOL):
    scale = max(1.0, float(np.max(np.abs(A))))
    return float(np.max(np.abs(A - A.conj().T))) <= tol * scale


def toeplitz_matrix(u, K):
    if K < 1:
        raise ValueError("K must be >= 1")
    f = fourier_coeffs(u, K)
    sym = f.coeffs
    col = sym[K:]          # u_hat(0), ..., u_hat(K)
    row = sym[K::-1]       # u_hat(0), u_hat(-1), ..., u_hat(-K)
    A = scipy.linalg.toeplitz(col, row)
    if not _is_hermitian(A):
        raise ValueError("Toeplitz symbol is not real-valued (matrix is not Hermitian)")
    return ToeplitzMatrix(A, sym, K)


def shift_apply(h, r):
    """Apply ``S_r = T_{q^r}`` to a truncated Hardy vector.

    Right shifts lose the top ``r`` modes; left shifts annihilate the
    modes pushed below index 0.
    """
    c = h.c
    K = c.size - 1
    if abs(r) > K:
        raise ValueError(f"|r| = {abs(r)} exceeds truncation order {K}")
    out = np.zeros_like(c)
    if r >= 0:
        out[r:] = c[: K + 1 - r]
    else:
        out[: K + 1 + r] = c[-r:]
    return HardyCoeffs(out)


def build_propagator(A, label=""):
    A = getattr(A, "entries", A)
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("generator must be a square matrix")
    if not _is_hermitian(A):
        raise ValueError("generator is not Hermitian")
    lam, V = np.linalg.eigh(0.5 * (A + A.conj().T))
    # fix the phase: first non-negligible component of each eigenvector real positive
    mag = np.abs(V)
    first = np.argmax(mag > 1e-10 * mag.max(axis=0), axis=0)
    ph = V[first, np.arange(V.shape[1])]
    V = V * (np.abs(ph) / ph)
    order = np.lexsort((first, lam))
    return HermitianPropagator(lam[order], V[:, order], label)


def propagate(P, theta, h):
    """``exp(i theta A) h``."""
    c = h.c if isinstance(h, HardyCoeffs) else np.asarray(h, dtype=complex)
    if c.size != P.dim:
        raise ValueError(f"vector of length {c.size} does not match propagator of dimension {P.dim}")
    V = P.eigenvectors
    out = V @ (np.exp(1j * theta * P.eigenvalues) * (V.conj().T @ c))
    return HardyCoeffs(out)


def bo_generator(u, eps, K):
    """``2 eps D - 2 T_u`` on the truncated Hardy space."""
    if eps < 0:
        raise ValueError("dispersion parameter must be non-negative")
    return 2.0 * eps * np.diag(np.arange(K + 1, dtype=float)) - 2.0 * toeplitz_matrix(u, K).entries
