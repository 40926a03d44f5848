"""Exact congruence solution counts mod a prime p.

For the form x^2 + u1^3 + u2^3 + u3^3 + u4^3 + u5^4 + u6^b = N (mod p), with
u_j units, three counts are tracked:

    K(p,N)      all six u_j units, no x term
    Lstar(p,N)  additionally a unit x contributing x^2
    L(p,N)      x unrestricted in 1..p

By construction L = Lstar + K for prime modulus, and p*Lstar = (p-1)^7 + E_p
with |E_p| <= (p-1)^2 (sqrt p + 1)(2 sqrt p + 1)^4 (3 sqrt p + 1).

Counts are computed by exact cyclic convolution of power-residue histograms.
Histogram vectors are packed into one big integer with 128-bit slots; integer
multiplication reduced mod 2^(128 p) - 1 is then exactly cyclic convolution
mod p (Kronecker substitution).  No floating point anywhere in this module.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import gmpy2
import numpy as np

from .arith import is_prime, power_residue_histogram

SLOT_BITS = 128  # fits the worst-case slot mass p*(p-1)^6 < 2^94 at p = 10^4
PRIME_LIMIT = 10**5


def _pack(counts: np.ndarray) -> gmpy2.mpz:
    buf = np.zeros((len(counts), SLOT_BITS // 64), dtype="<u8")
    buf[:, 0] = counts.astype(np.uint64)
    return gmpy2.mpz(int.from_bytes(buf.tobytes(), "little"))


def _unpack_limbs(x: gmpy2.mpz, p: int) -> tuple[np.ndarray, np.ndarray]:
    raw = int(x).to_bytes((SLOT_BITS // 8) * p, "little")
    a = np.frombuffer(raw, dtype="<u8").reshape(p, 2)
    return a[:, 0].copy(), a[:, 1].copy()


def _limbs_to_ints(lo: np.ndarray, hi: np.ndarray) -> list[int]:
    return [int(l) | (int(h) << 64) for l, h in zip(lo.tolist(), hi.tolist())]


@dataclass(frozen=True)
class LocalCountVectors:
    """Exact count vectors over all residues n = 0..p-1, as (lo, hi) uint64 limbs."""

    p: int
    b: int
    K_lo: np.ndarray
    K_hi: np.ndarray
    Lstar_lo: np.ndarray
    Lstar_hi: np.ndarray
    L_lo: np.ndarray
    L_hi: np.ndarray

    def K(self, n_res: int) -> int:
        return int(self.K_lo[n_res]) | (int(self.K_hi[n_res]) << 64)

    def Lstar(self, n_res: int) -> int:
        return int(self.Lstar_lo[n_res]) | (int(self.Lstar_hi[n_res]) << 64)

    def L(self, n_res: int) -> int:
        return int(self.L_lo[n_res]) | (int(self.L_hi[n_res]) << 64)

    def decomposition_holds(self) -> bool:
        """L == Lstar + K exactly, checked vectorised in limb arithmetic."""
        lo = self.Lstar_lo + self.K_lo  # uint64 wraps mod 2^64
        carry = (lo < self.K_lo).astype(np.uint64)
        hi = self.Lstar_hi + self.K_hi + carry
        return bool(np.all(lo == self.L_lo) and np.all(hi == self.L_hi))

    def lstar_all_positive(self) -> bool:
        return bool(np.all((self.Lstar_lo | self.Lstar_hi) != 0))


_vec_cache: dict[tuple, LocalCountVectors] = {}
_common_cache: dict[int, tuple] = {}
_lock = threading.Lock()


def _common_parts(p: int):
    hit = _common_cache.get(p)
    if hit is not None:
        return hit
    mod = (gmpy2.mpz(1) << (SLOT_BITS * p)) - 1
    h3 = _pack(power_residue_histogram(3, p, True).counts)
    h4 = _pack(power_residue_histogram(4, p, True).counts)
    acc = h3
    for h in (h3, h3, h3, h4):
        acc = acc * h % mod
    h2u = _pack(power_residue_histogram(2, p, True).counts)
    h2a = _pack(power_residue_histogram(2, p, False).counts)
    out = (mod, acc, h2u, h2a)
    with _lock:
        _common_cache.setdefault(p, out)
    return out


def count_vectors(p: int, b: int) -> LocalCountVectors:
    """All-residue exact count vectors for one (p, b)."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p > PRIME_LIMIT:
        raise ValueError(f"p must be <= {PRIME_LIMIT}")
    key = (p, math.gcd(b, p - 1) if p > 2 else 1)
    hit = _vec_cache.get(key)
    if hit is None:
        mod, common, h2u, h2a = _common_parts(p)
        K = common * _pack(power_residue_histogram(b, p, True).counts) % mod
        Lstar = K * h2u % mod
        L = K * h2a % mod
        klo, khi = _unpack_limbs(K, p)
        slo, shi = _unpack_limbs(Lstar, p)
        llo, lhi = _unpack_limbs(L, p)
        hit = LocalCountVectors(p, b, klo, khi, slo, shi, llo, lhi)
        with _lock:
            _vec_cache.setdefault(key, hit)
    return hit


def count_K(p: int, n_res: int, b: int) -> int:
    _check_args(p, n_res, b)
    return count_vectors(p, b).K(n_res)


def count_Lstar(p: int, n_res: int, b: int) -> int:
    _check_args(p, n_res, b)
    return count_vectors(p, b).Lstar(n_res)


def count_L(p: int, n_res: int, b: int) -> int:
    _check_args(p, n_res, b)
    return count_vectors(p, b).L(n_res)


def _check_args(p: int, n_res: int, b: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not 0 <= n_res < p:
        raise ValueError("need 0 <= n_res < p")
    if not 12 <= b <= 35:
        raise ValueError("b must lie in 12..35")


def ep_bound(p: int) -> float:
    sq = math.sqrt(p)
    return (p - 1) ** 2 * (sq + 1) * (2 * sq + 1) ** 4 * (3 * sq + 1)


@dataclass(frozen=True)
class LocalSolutionCounts:
    p: int
    n_res: int
    b: int
    L: int
    K: int
    Lstar: int
    Ep: int

    @property
    def Ep_bound(self) -> float:
        return ep_bound(self.p)


def local_counts(p: int, n_res: int, b: int) -> LocalSolutionCounts:
    _check_args(p, n_res, b)
    v = count_vectors(p, b)
    L, K, Ls = v.L(n_res), v.K(n_res), v.Lstar(n_res)
    if L != Ls + K:
        raise AssertionError(f"decomposition L = Lstar + K failed at {(p, n_res, b)}")
    return LocalSolutionCounts(p, n_res, b, L, K, Ls, p * Ls - (p - 1) ** 7)


def error_term(p: int, n_res: int, b: int) -> tuple[int, float]:
    """(E_p, bound).  Raises if the bound is violated: that is a bug signal."""
    c = local_counts(p, n_res, b)
    bound = c.Ep_bound
    if abs(c.Ep) > bound:
        raise AssertionError(f"|E_p| bound violated at {(p, n_res, b)}: {c.Ep} vs {bound}")
    return c.Ep, bound


def verify_small_primes(b: int) -> dict[tuple[int, int], bool]:
    """Positivity Lstar(p, n_res, b) > 0 at p in {2,3,5,7,11}.

    At p = 2 only the odd residue is checked: every variable is then the unit
    1, so the form is congruent to 7 = 1 (mod 2) identically and the even
    class has no solutions at all.  The represented integers are odd, so the
    even class never arises.
    """
    if not 12 <= b <= 35:
        raise ValueError("b must lie in 12..35")
    report: dict[tuple[int, int], bool] = {}
    for p in (2, 3, 5, 7, 11):
        v = count_vectors(p, b)
        residues = (1,) if p == 2 else range(p)
        for n_res in residues:
            report[(p, n_res)] = v.Lstar(n_res) > 0
    return report
