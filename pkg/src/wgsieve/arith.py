"""Integer and multiplicative-function primitives shared by every other module.

Everything here is exact integer arithmetic.  The residue histograms are the
workhorse: a histogram of u^k mod q over u in 1..q (or over units only) is
what turns complete exponential sums and congruence counting into
convolutions.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic below 3.3e24

PRIMES_LIMIT = 10**9
FACTOR_LIMIT = 10**15
HISTOGRAM_LIMIT = 10**7


class ResourceLimitError(RuntimeError):
    """A computation would exceed its declared size or node budget."""


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit, ascending (int64 array)."""
    if not 2 <= limit <= PRIMES_LIMIT:
        raise ValueError(f"limit must be in [2, {PRIMES_LIMIT}], got {limit}")
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 10^15 input bound."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must be ascending with exponents >= 1")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError("factor product does not equal n")


def _rho_brent(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed, seed, 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> Factorization:
    if not 1 <= n <= FACTOR_LIMIT:
        raise ValueError(f"n must be in [1, {FACTOR_LIMIT}], got {n}")
    m = n
    fac: dict[int, int] = {}
    for p in range(2, 10**5):
        if p * p > m:
            break
        while m % p == 0:
            fac[p] = fac.get(p, 0) + 1
            m //= p
    # remaining cofactor has no prime factor below 1e5, so at most 3 primes at n <= 1e15
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        d = _rho_brent(m)
        stack.extend([d, m // d])
    return Factorization(n, tuple(sorted(fac.items())))


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).factors:
        phi *= (p - 1) * p ** (e - 1)
    return phi


def moebius(n: int) -> int:
    f = factorize(n).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisor_tau(n: int, k: int = 2) -> int:
    """k-dimensional divisor function: number of ordered k-tuples with product n."""
    if k < 2:
        raise ValueError("divisor_tau needs k >= 2")
    t = 1
    for _, e in factorize(n).factors:
        t *= math.comb(e + k - 1, k - 1)
    return t


def carmichael_lambda(n: int) -> int:
    lam = 1
    for p, e in factorize(n).factors:
        if p == 2 and e >= 3:
            block = 2 ** (e - 2)
        else:
            block = (p - 1) * p ** (e - 1)
        lam = lam * block // math.gcd(lam, block)
    return lam


@dataclass(frozen=True)
class ResidueHistogram:
    """counts[r] = #{u : u^k == r (mod q)} with u over 1..q or over units."""

    modulus: int
    exponent: int
    units_only: bool
    counts: np.ndarray = field(repr=False)

    @property
    def mass(self) -> int:
        return int(self.counts.sum())


def _modpow_vec(base: np.ndarray, k: int, q: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % q
    e = k
    while e:
        if e & 1:
            out = out * b % q
        b = b * b % q
        e >>= 1
    return out


def _histogram_key(k: int, q: int, units_only: bool) -> tuple:
    # u^k mod q is periodic in k with period lambda(q) on units.  For the
    # all-residue domain the non-unit part stabilises only once k reaches the
    # largest prime-power exponent in q, so the key offsets by that.
    lam = carmichael_lambda(q)
    if units_only:
        k_eff = (k - 1) % lam + 1
    else:
        k0 = max((e for _, e in factorize(q).factors), default=1)
        k_eff = k if k < k0 else k0 + (k - k0) % lam
    return (k_eff, q, units_only)


_hist_cache: dict[tuple, ResidueHistogram] = {}
_hist_lock = threading.Lock()


def power_residue_histogram(k: int, q: int, units_only: bool = False) -> ResidueHistogram:
    if q < 1 or q > HISTOGRAM_LIMIT:
        raise ValueError(f"modulus must be in [1, {HISTOGRAM_LIMIT}], got {q}")
    if k < 1:
        raise ValueError("exponent must be >= 1")
    key = _histogram_key(k, q, units_only)
    hit = _hist_cache.get(key)
    if hit is not None:
        return ResidueHistogram(q, k, units_only, hit.counts)
    u = np.arange(1, q + 1, dtype=np.int64)
    if units_only:
        u = u[np.gcd(u, q) == 1]
    vals = _modpow_vec(u, key[0], q)
    counts = np.bincount(vals, minlength=q)[:q]
    counts.setflags(write=False)
    out = ResidueHistogram(q, k, units_only, counts)
    with _hist_lock:
        _hist_cache.setdefault(key, out)
    return out


def least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fac = [q for q, _ in factorize(p - 1).factors]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise AssertionError("no primitive root found; p not prime?")


class CharacterTable:
    """All p-1 Dirichlet characters mod an odd prime p.

    Characters are materialised lazily: row j is the character mapping the
    fixed primitive root g to e(j/(p-1)).  Row 0 is the principal character.
    Indexing by residue: table[j][u] for u in 1..p-1 (index u-1).
    """

    def __init__(self, p: int):
        if p > 10**5 or p < 3 or not is_prime(p):
            raise ValueError(f"need an odd prime <= 1e5, got {p}")
        self.p = p
        self.g = least_primitive_root(p)
        dlog = np.zeros(p, dtype=np.int64)  # dlog[u] for u in 1..p-1
        acc = 1
        for t in range(p - 1):
            dlog[acc] = t
            acc = acc * self.g % p
        self._dlog = dlog
        self._roots = np.exp(2j * np.pi * np.arange(p - 1) / (p - 1))

    def __len__(self) -> int:
        return self.p - 1

    def __getitem__(self, j: int) -> np.ndarray:
        """Value vector on residues 1..p-1 (complex, unit modulus)."""
        if not 0 <= j < self.p - 1:
            raise IndexError(j)
        return self._roots[(j * self._dlog[1:]) % (self.p - 1)]

    def __iter__(self):
        return (self[j] for j in range(self.p - 1))


def character_table_mod_p(p: int) -> CharacterTable:
    return CharacterTable(p)
