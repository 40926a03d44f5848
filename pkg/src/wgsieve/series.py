"""Euler-product coefficients, the singular series, and the sieve density omega.

Per-prime factors come from the exact congruence counts in `local`:

    1 + A(p,N) = L(p,N) / (p-1)^6        (generic factor)
    1 + A_p(p,N) = p K(p,N) / (p-1)^6    (factor at p | d)
    omega(p) = p K(p,N) / L(p,N)

The truncated products carry certified tails: |A(p,N)| <= 100/p^2 for p >= 19,
so the omitted factors lie between 1 - S and exp(S) with
S = sum_{p > p_max} 100/p^2 <= 100/(p_max - 1).

Factors are exact rationals up to EXACT_PRIME_LIMIT.  Beyond it they switch
to a multiplicative-character route: on the unit group every power-residue
histogram is a subgroup comb, so the six-fold exponential-sum product is a
combination of at most lcm(12, b) <= 420 characters, and one discrete-log
fold of e(g^i/p) yields every Gauss sum needed.  Each factor then costs O(p)
with error around 1e-13 relative, far below the certified tail allowance.
Products over many N share one sweep over primes via the *_many variants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import local
from .arith import factorize, least_primitive_root, power_residue_histogram, primes_up_to
from .expsums import ExpSumValue, all_residue_sums
from .intervals import IntervalValue

EXACT_PRIME_LIMIT = 1000
B_MODULUS_LIMIT = 2000


def A_coeff(p: int, N: int, b: int) -> Fraction:
    """L(p, N mod p, b)/(p-1)^6 - 1, exact."""
    if N < 1:
        raise ValueError("N must be >= 1")
    L = local.count_L(p, N % p, b)
    return Fraction(L, (p - 1) ** 6) - 1


def B_coeff(q: int, d: int, N: int, b: int) -> ExpSumValue:
    """sum over (a,q)=1 of S_2(q, a d^2) S_3*(q,a)^4 S_4*(q,a) S_b*(q,a) e(-aN/q)."""
    if not 1 <= q <= B_MODULUS_LIMIT:
        raise ValueError(f"q must lie in 1..{B_MODULUS_LIMIT}")
    if d < 1:
        raise ValueError("d must be >= 1")
    s2 = all_residue_sums(2, q, units_only=False)
    s3 = all_residue_sums(3, q, units_only=True)
    s4 = all_residue_sums(4, q, units_only=True)
    sb = all_residue_sums(b, q, units_only=True)
    a = np.arange(q, dtype=np.int64)
    mask = np.gcd(a, q) == 1
    vals = (
        s2[(a * (d * d % q)) % q]
        * s3**4
        * s4
        * sb
        * np.exp((-2j * np.pi / q) * ((a * (N % q)) % q))
    )
    total = complex(np.sum(vals[mask]))
    n_terms = int(np.count_nonzero(mask))
    return ExpSumValue(total, n_terms, 1e-13 * n_terms * q**3)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


def _tail_allowance(p_max: int) -> float:
    # sum_{p > p_max} 100/p^2 <= 100 * sum_{n >= p_max} 1/n^2 <= 100/(p_max - 1)
    return 100.0 / (p_max - 1)


def _exact_factor_vector(p: int, b: int, at_d_prime: bool) -> np.ndarray:
    """(1 + A) over all residues as float64, from the exact limb vectors."""
    v = local.count_vectors(p, b)
    scale = 1.0 / float((p - 1) ** 6)
    if at_d_prime:
        raw = (v.K_lo.astype(float) + v.K_hi.astype(float) * 2.0**64) * p
    else:
        raw = v.L_lo.astype(float) + v.L_hi.astype(float) * 2.0**64
    return raw * scale


def _fft_factor_vector(p: int, b: int) -> np.ndarray:
    """(1 + A) over all residues by real cyclic convolution of histograms.

    Slow at large p (prime-length FFTs); kept as an independent cross-check
    for the character route.
    """
    h3 = power_residue_histogram(3, p, True).counts.astype(float)
    h4 = power_residue_histogram(4, p, True).counts.astype(float)
    hb = power_residue_histogram(b, p, True).counts.astype(float)
    h2 = power_residue_histogram(2, p, False).counts.astype(float)
    spec = np.fft.rfft(h3) ** 4 * np.fft.rfft(h4) * np.fft.rfft(hb) * np.fft.rfft(h2)
    return np.fft.irfft(spec, n=p) / float((p - 1) ** 6)


def _primitive_root_tables(p: int) -> tuple[np.ndarray, np.ndarray]:
    """(pows, ind): pows[i] = g^i mod p for i < p-1 and ind[pows[i]] = i.

    Built baby-step/giant-step so the Python loops run O(sqrt p) steps;
    ind[0] is never written and must not be read.
    """
    g = least_primitive_root(p)
    m = p - 1
    s = math.isqrt(m) + 1
    baby = np.empty(s, dtype=np.int64)
    x = 1
    for t in range(s):
        baby[t] = x
        x = x * g % p
    giant = np.empty((m + s - 1) // s, dtype=np.int64)
    y = 1
    for j in range(len(giant)):
        giant[j] = y
        y = y * x % p
    pows = (giant[:, None] * baby[None, :] % p).reshape(-1)[:m]
    ind = np.empty(p, dtype=np.int64)
    ind[pows] = np.arange(m)
    return pows, ind


def _char_factor_rows(p: int, bs: Sequence[int], residues: np.ndarray) -> np.ndarray:
    """Rows of (1 + A(p, n, b)) for each b, at the given residues mod p.

    Writes S_2(a) S_3*(a)^4 S_4*(a) S_b*(a) as sum_j w_j chi^j(a) over the
    characters chi^j of order dividing L = lcm(2, (3,p-1), (4,p-1), (b,p-1)):
    a unit-power sum with d = (k, p-1) is -1 + sum over the d-1 nontrivial
    chi with chi^d trivial of conj(chi)(a) tau(chi), and the complete square
    sum is chi_2(a) tau(chi_2).  Orthogonality then collapses the a-sum, so

        p L(p,n) = p(p-1)^6 - w_0 + sum_{j>0} w_j tau(chi^j) conj(chi^j)(-n)

    for p that does not divide n, and p L(p,0) = p(p-1)^6 + (p-1) w_0.
    Every tau comes from one length-L DFT of the discrete-log fold of
    e(g^i/p), so the cost is O(p) per prime with no length-p transform.
    """
    m = p - 1
    pows, ind = _primitive_root_tables(p)
    d3, d4 = math.gcd(3, m), math.gcd(4, m)
    dbs = [math.gcd(b, m) for b in bs]
    L = math.lcm(2, d3, d4, *dbs)
    folded = np.exp((2j * np.pi / p) * pows).reshape(m // L, L).sum(axis=0)
    tau = L * np.fft.ifft(folded)

    spec_cache: dict[int, np.ndarray] = {}

    def unit_spec(d: int) -> np.ndarray:
        out = spec_cache.get(d)
        if out is None:
            s = np.zeros(L, dtype=complex)
            s[0] = -1.0
            for mm in range(1, d):
                j = mm * L // d
                s[-j % L] += tau[j]
            out = spec_cache.setdefault(d, np.fft.fft(s))
        return out

    square = np.zeros(L, dtype=complex)
    square[L // 2] = tau[L // 2]
    base = np.fft.fft(square) * unit_spec(d3) ** 4 * unit_spec(d4)

    res = np.asarray(residues, dtype=np.int64)
    zero = res == 0
    idx = ind[np.where(zero, 1, (p - res) % p)]
    roots = np.exp((-2j * np.pi / L) * np.arange(L))
    phase = roots[np.outer(np.arange(1, L), idx) % L]
    denom = float(p) * float(m) ** 6
    out = np.empty((len(bs), len(res)))
    for row, db in enumerate(dbs):
        w = np.fft.ifft(base * unit_spec(db))
        terms = ((w[1:] * tau[1:])[:, None] * phase).sum(axis=0) - w[0]
        vals = 1.0 + terms.real / denom
        vals[zero] = 1.0 + w[0].real / (float(p) * float(m) ** 5)
        out[row] = vals
    return out


def series_points_table(Ns: Sequence[int], bs: Sequence[int], p_max: int) -> np.ndarray:
    """Truncated-product points, shape (len(bs), len(Ns)), one prime sweep.

    The per-prime work is shared across every N and every b: the exact count
    vectors cover all residues at once, and the character route reuses the
    discrete-log fold and Gauss sums.
    """
    for b in bs:
        if not 12 <= b <= 35:
            raise ValueError("b must lie in 12..35")
    arr = np.asarray(list(Ns), dtype=np.int64)
    if arr.size == 0:
        raise ValueError("need at least one N")
    if np.any(arr < 1):
        raise ValueError("all N must be >= 1")
    if np.any(arr % 2 == 0):
        raise ValueError("all N must be odd")
    pts = np.ones((len(bs), len(arr)))
    for p in primes_up_to(p_max).tolist():
        res = np.mod(arr, p)
        if p <= EXACT_PRIME_LIMIT:
            for i, b in enumerate(bs):
                pts[i] *= _exact_factor_vector(p, b, False)[res]
        else:
            pts *= _char_factor_rows(p, bs, res)
    return pts


def series_points_many(
    Ns: Sequence[int], b: int, p_max: int, d: int = 1
) -> np.ndarray:
    """Truncated-product point values for many N in a single sweep over primes.

    The factor at each p | d is p K(p,N)/(p-1)^6 instead of L(p,N)/(p-1)^6.
    """
    if d > 1 and (not is_squarefree(d) or d % 2 == 0):
        raise ValueError("d must be squarefree and odd")
    arr = np.asarray(list(Ns), dtype=np.int64)
    pts = series_points_table(Ns, [b], p_max)[0]
    if d > 1:
        # replace the generic factor L/(p-1)^6 by p K/(p-1)^6 via the exact
        # ratio p K / L at each prime dividing d
        for p, _ in factorize(d).factors:
            if p > p_max:
                raise ValueError("every prime of d must be <= p_max")
            v = local.count_vectors(p, b)
            ratio = np.array(
                [p * v.K(r) / v.L(r) for r in np.mod(arr, p).tolist()]
            )
            pts = pts * ratio
    return pts


def singular_series(N: int, b: int, p_max: int) -> IntervalValue:
    """Certified enclosure of S(N) = prod_p (1 + A(p,N)), truncated at p_max.

    N must be odd: x is odd in the sifted sequence, so even N admits no
    representation, while the formal product itself would not see that
    obstruction (its p = 2 factor is L(2,N)/1 = 1 for either parity).
    """
    if p_max < 19:
        raise ValueError("p_max must be >= 19 for the 100/p^2 tail bound")
    point = float(series_points_many([N], b, p_max)[0])
    S = _tail_allowance(p_max)
    return IntervalValue(point, point * max(0.0, 1.0 - S), point * math.exp(S))


def singular_series_many(Ns: Sequence[int], b: int, p_max: int) -> list[IntervalValue]:
    if p_max < 19:
        raise ValueError("p_max must be >= 19 for the 100/p^2 tail bound")
    S = _tail_allowance(p_max)
    return [
        IntervalValue(float(x), float(x) * max(0.0, 1.0 - S), float(x) * math.exp(S))
        for x in series_points_many(Ns, b, p_max)
    ]


def singular_series_d(d: int, N: int, b: int, p_max: int) -> IntervalValue:
    """S_d(N): the factor at each p | d is replaced by p K(p,N)/(p-1)^6."""
    if d < 1 or not is_squarefree(d):
        raise ValueError("d must be squarefree")
    if d > 1 and d % 2 == 0:
        raise ValueError("d must be odd")
    if p_max < 19:
        raise ValueError("p_max must be >= 19 for the 100/p^2 tail bound")
    point = float(series_points_many([N], b, p_max, d=d)[0])
    S = _tail_allowance(p_max)
    return IntervalValue(point, point * max(0.0, 1.0 - S), point * math.exp(S))


def omega_p(p: int, N: int, b: int) -> Fraction:
    """p K(p,N) / L(p,N), exact."""
    v = local.count_vectors(p, b)
    n_res = N % p
    L = v.L(n_res)
    if L == 0:
        raise AssertionError(f"L(p,N) = 0 at {(p, n_res, b)}; should be impossible")
    return Fraction(p * v.K(n_res), L)


def omega_d(d: int, N: int, b: int) -> Fraction:
    if d < 1 or not is_squarefree(d) or d % 2 == 0:
        raise ValueError("d must be squarefree with odd prime factors")
    out = Fraction(1)
    for p, _ in factorize(d).factors:
        out *= omega_p(p, N, b)
    return out


@dataclass(frozen=True)
class OmegaDensity:
    """omega(p) for all odd primes up to a limit, for one (N, b)."""

    b: int
    N: int
    values: tuple  # ((p, Fraction), ...) sorted by p

    def __post_init__(self):
        for p, w in self.values:
            if not 0 <= w < p:
                raise ValueError(f"omega({p}) = {w} outside [0, {p})")

    @classmethod
    def compute(cls, N: int, b: int, p_limit: int) -> "OmegaDensity":
        vals = tuple(
            (int(p), omega_p(int(p), N, b)) for p in primes_up_to(p_limit)[1:]
        )
        return cls(b, N, vals)

    def omega(self, d: int) -> Fraction:
        stored = dict(self.values)
        out = Fraction(1)
        for p, e in factorize(d).factors:
            if e > 1:
                raise ValueError("d must be squarefree")
            if p not in stored:
                raise KeyError(f"p = {p} beyond stored limit")
            out *= stored[p]
        return out


def sieve_product_V(z: float, N: int, b: int) -> float:
    """prod over odd primes p < z of (1 - omega(p)/p), in extended precision."""
    if z < 3:
        raise ValueError("z must be >= 3")
    limit = int(math.ceil(z)) - 1 if float(z).is_integer() else int(math.floor(z))
    with mpmath.workdps(30):
        acc = mpmath.mpf(1)
        for p in primes_up_to(max(limit, 2)).tolist():
            if p == 2 or p >= z:
                continue
            w = omega_p(p, N, b)
            acc *= 1 - mpmath.mpf(w.numerator) / (p * w.denominator)
        return float(acc)
