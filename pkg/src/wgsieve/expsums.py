"""Complete exponential sums S_k(q,a), unit sums S_k*(q,a) and character sums.

All sums are evaluated through residue histograms: S = sum_r counts[r] e(ar/q),
which costs O(q) per evaluation and lets the density modules sweep every a via
one FFT.  Values are algebraic numbers evaluated in floating point; each result
carries a conservative rounding bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import CharacterTable, power_residue_histogram

# per-term float error for e(x) plus accumulation slack; far below the 1e-8
# per-summand budget the data contract allows
_EPS_PER_TERM = 1e-13


@dataclass(frozen=True)
class ExpSumValue:
    value: complex
    n_terms: int
    abs_error: float

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def __abs__(self) -> float:
        return abs(self.value)


def _hist_sum(counts: np.ndarray, q: int, a: int, mass: int) -> ExpSumValue:
    a = a % q
    r = np.nonzero(counts)[0]
    phase = np.exp((2j * np.pi * a / q) * r)
    val = complex(np.dot(counts[r].astype(np.float64), phase))
    return ExpSumValue(val, mass, _EPS_PER_TERM * max(mass, 1))


def complete_sum(k: int, q: int, a: int) -> ExpSumValue:
    """S_k(q,a) = sum_{n=1}^{q} e(a n^k / q)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    h = power_residue_histogram(k, q, units_only=False)
    return _hist_sum(h.counts, q, a, q)


def unit_sum(k: int, q: int, a: int) -> ExpSumValue:
    """S_k*(q,a): the same sum restricted to (n,q)=1."""
    if q < 1:
        raise ValueError("q must be >= 1")
    h = power_residue_histogram(k, q, units_only=True)
    return _hist_sum(h.counts, q, a, h.mass)


def all_residue_sums(k: int, q: int, units_only: bool = False) -> np.ndarray:
    """Vector of S values for every a = 0..q-1 at once.

    S(a) = sum_r counts[r] e(ar/q) = conj(FFT(counts))[a].
    """
    h = power_residue_histogram(k, q, units_only)
    return np.conj(np.fft.fft(h.counts.astype(np.float64)))


def character_sum(k: int, table: CharacterTable, j: int, a: int) -> ExpSumValue:
    """G_k(chi_j, a) = sum_{n=1}^{p} chi_j(n) e(a n^k / p) for prime modulus."""
    p = table.p
    if math.gcd(a, p) != 1:
        raise ValueError("need (a, p) = 1")
    n = np.arange(1, p, dtype=np.int64)
    nk = np.ones_like(n)
    b, e = n % p, k
    while e:
        if e & 1:
            nk = nk * b % p
        b = b * b % p
        e >>= 1
    val = complex(np.sum(table[j] * np.exp((2j * np.pi * (a % p) / p) * nk)))
    return ExpSumValue(val, p - 1, _EPS_PER_TERM * p)


def gamma_cutoff(k: int, p: int) -> int:
    """Vanishing threshold gamma(p): S_k*(p^l, a) = 0 for all l >= gamma(p).

    With p^theta || k: theta+2 unless p = 2 and theta > 0, where it is theta+3.
    """
    theta = 0
    m = k
    while m % p == 0:
        theta += 1
        m //= p
    if p == 2 and theta > 0:
        return theta + 3
    return theta + 2
