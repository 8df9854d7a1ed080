"""Shift-word combinatorics behind the equality of the two series expansions.

Vectors are stored 0-based but indexed 1-based and cyclically, so ``y_j`` is
``y[(j - 1) % len(y)]`` and ``y_0`` is the last entry.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

WORD_BUDGET = 10_000_000


@dataclass(frozen=True)
class ShiftWord:
    """A pair ``(m, n)`` with ``sum(m) = k >= 1`` and ``n >= 0``, ``sum(n) = d = len(m) - 1``."""

    m: tuple
    n: tuple

    def __post_init__(self):
        m, n = tuple(int(a) for a in self.m), tuple(int(a) for a in self.n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        if not m or not n:
            raise ValueError("m and n must be non-empty")
        if sum(m) != len(n) or sum(m) < 1:
            raise ValueError(f"sum(m) = {sum(m)} must equal len(n) = {len(n)} >= 1")
        if any(a < 0 for a in n) or sum(n) != len(m) - 1:
            raise ValueError(f"n must be non-negative with sum {len(m) - 1}")

    @property
    def k(self):
        return len(self.n)

    @property
    def d(self):
        return len(self.m) - 1

    def rotated(self, j, l):
        """``(T^j m, T^l n)``."""
        return ShiftWord(rotate(self.m, j), rotate(self.n, l))


def rotate(y, r):
    """Cyclic shift ``(T^r y)_j = y_{j + r}``."""
    r %= len(y)
    return tuple(y[r:]) + tuple(y[:r])


def signed_sum(y, j):
    """``y_1 + ... + y_j`` for ``j > 0``, ``-(y_{j+1} + ... + y_0)`` for ``j < 0``, 0 at 0."""
    L = len(y)
    if j > 0:
        return sum(y[(i - 1) % L] for i in range(1, j + 1))
    if j < 0:
        return -sum(y[(i - 1) % L] for i in range(j + 1, 1))
    return 0


def _operator_sequence(w):
    # S(m, n) left to right; S* is S_{-1}
    m, n = w.m, w.n
    seq = []
    pos = 0
    for nl in n:
        seq.extend(m[pos:pos + nl])
        seq.append(-1)
        pos += nl
    seq.append(m[-1])
    return seq


def shift_word_weight(w):
    """``<S(m, n) 1, 1>`` by tracking the exponent of the single monomial."""
    e = 0
    for r in reversed(_operator_sequence(w)):
        e += r
        if e < 0:
            return 0
    return int(e == 0)


def weight_characterization(w):
    """The inequality test equivalent to weight one."""
    return all(signed_sum(w.n, signed_sum(w.m, j)) < j for j in range(1, w.d + 1))


def associated_vector(w):
    """``y_j = 1 + Sigma(n, Sigma(m, j-1)) - Sigma(n, Sigma(m, j))`` for ``j = 1..d+1``."""
    sig = [signed_sum(w.n, signed_sum(w.m, j)) for j in range(w.d + 2)]
    return tuple(1 + sig[j - 1] - sig[j] for j in range(1, w.d + 2))


def _positive_prefixes(y):
    s = 0
    for a in y[:-1]:
        s += a
        if s <= 0:
            return False
    return True


def raney_rotation(y):
    """The unique ``r in 1..len(y)`` such that ``T^r y`` has positive proper partial sums."""
    y = tuple(int(a) for a in y)
    if sum(y) != 1:
        raise ValueError(f"vector sums to {sum(y)}, not 1")
    hits = [r for r in range(1, len(y) + 1) if _positive_prefixes(rotate(y, r))]
    assert len(hits) == 1, f"Raney's lemma violated for {y}: rotations {hits}"
    return hits[0]


def raney_type_sum(w):
    """Sum of weights over all ``(d+1) * k`` joint rotations; equals ``k``."""
    return sum(shift_word_weight(w.rotated(j, l))
               for j in range(1, w.d + 2) for l in range(1, w.k + 1))


def compositions(total, parts):
    """All ``n in N_0^parts`` with ``sum(n) = total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def m_vectors(k, d, support):
    """``m`` in ``support^(d+1)`` summing to ``k``."""
    support = sorted(support)
    for m in itertools.product(support, repeat=d + 1):
        if sum(m) == k:
            yield m


def enumerate_words(k, d, M):
    for m in m_vectors(k, d, range(-M, M + 1)):
        for n in compositions(d, k):
            yield ShiftWord(m, n)


# ---------------------------------------------------------------- expansions

def _mode_table(u0, exact):
    """Nonzero Fourier coefficients of a trig polynomial, keyed by mode."""
    if u0.kind != "trig":
        raise ValueError("series expansions need a trig polynomial datum")
    table = {}
    if exact:
        if u0.mean:
            table[0] = Fraction(u0.mean)
        for j, a in enumerate(u0.cos, start=1):
            if a:
                table[j] = table[-j] = Fraction(a) / 2
        return table
    if u0.mean:
        table[0] = complex(u0.mean)
    for j, (a, b) in enumerate(zip(u0.cos, u0.sin), start=1):
        if a or b:
            table[j] = 0.5 * (a - 1j * b)
            table[-j] = 0.5 * (a + 1j * b)
    return table


def _rational_mode(u0):
    return not any(u0.sin)


def _check_budget(u0, k, d, with_n, budget):
    M = u0.degree
    size = (2 * M + 1) ** (d + 1)
    if with_n:
        size *= len(list(compositions(d, k)))
    if size > budget:
        raise ValueError(f"enumeration of {size} words exceeds budget {budget}; "
                         "reduce k, d or the degree of u0")


def _product(table, m):
    p = 1
    for a in m:
        p = p * table[a]
    return p


def hard_expansion_coeff(u0, k, d, exact=None, budget=WORD_BUDGET):
    """Coefficient of ``(-2it)^d`` in the shift-word expansion of the k-th ZD coefficient.

    Exact ``Fraction`` arithmetic when ``u0`` has only cosine terms (and
    ``exact`` is not False), complex floats otherwise.
    """
    if k < 1 or d < 0:
        raise ValueError("need k >= 1 and d >= 0")
    _check_budget(u0, k, d, True, budget)
    exact = _rational_mode(u0) if exact is None else exact
    table = _mode_table(u0, exact)
    ns = list(compositions(d, k))
    inv_fact = {n: Fraction(1, int(np.prod([factorial(a) for a in n]))) for n in ns}
    total = Fraction(0) if exact else 0j
    for m in m_vectors(k, d, table):
        w = sum((inv_fact[n] for n in ns if shift_word_weight(ShiftWord(m, n))), Fraction(0))
        if w:
            total += (w if exact else float(w)) * _product(table, m)
    return total


def easy_expansion_coeff(u0, k, d, exact=None, budget=WORD_BUDGET):
    """``k^d / (d+1)! * sum over m in X_{d,k} of u_hat(m)``."""
    if k < 1 or d < 0:
        raise ValueError("need k >= 1 and d >= 0")
    _check_budget(u0, k, d, False, budget)
    exact = _rational_mode(u0) if exact is None else exact
    table = _mode_table(u0, exact)
    s = Fraction(0) if exact else 0j
    for m in m_vectors(k, d, table):
        s += _product(table, m)
    scale = Fraction(k ** d, factorial(d + 1))
    return scale * s if exact else float(scale) * s


def taylor_partial_sum(u0, t, k, D):
    """``sum_{d <= D} easy_coeff(d) (-2it)^d`` in complex floats."""
    return sum(complex(easy_expansion_coeff(u0, k, d)) * (-2j * t) ** d for d in range(D + 1))


# ----------------------------------------------------------- exhaustive check

@dataclass(frozen=True)
class VerifyRow:
    k: int
    d: int
    M: int
    words_checked: int
    failures: int


def verify_word(w):
    """Names of the identities that fail for ``w`` (empty when all hold)."""
    bad = []
    weight = shift_word_weight(w)
    if raney_type_sum(w) != w.k:
        bad.append("raney_type_sum")
    if bool(weight) != weight_characterization(w):
        bad.append("characterization")
    y = associated_vector(w)
    if sum(y) != 1:
        bad.append("sums_to_one")
    if bool(weight) != _positive_prefixes(y):
        bad.append("positive_prefixes")
    if rotate(y, 1) != associated_vector(ShiftWord(rotate(w.m, 1), rotate(w.n, w.m[0]))):
        bad.append("shift_relation")
    return bad


def verify_exhaustive(k_max, d_max, M, budget=WORD_BUDGET):
    """One row per ``(k, d)`` with ``1 <= k <= k_max``, ``0 <= d <= d_max``."""
    size = sum((2 * M + 1) ** (d + 1) * len(list(compositions(d, k)))
               for k in range(1, k_max + 1) for d in range(d_max + 1))
    if size > budget:
        raise ValueError(f"exhaustive check of up to {size} words exceeds budget {budget}")
    rows = []
    for k in range(1, k_max + 1):
        for d in range(d_max + 1):
            checked = failures = 0
            for w in enumerate_words(k, d, M):
                checked += 1
                failures += bool(verify_word(w))
            rows.append(VerifyRow(k, d, M, checked, failures))
    return rows
