"""Oscillatory integrals v_k(beta), direct generating sums, and J(N).

The singular integral is evaluated in real space: each variable u in (U, 2U]
with u^k = t pushes forward to the density (1/k) t^{1/k-1} on the image
interval, and J(N) is the 7-fold convolution of those densities at N.  That
form is exact and positive, so a grid convolution plus one refinement gives a
usable enclosure; no oscillatory cancellation is involved.

v_k(beta) itself is computed after the same substitution t = u^k as
int e(beta t) g(t) dt with g(t) = (1/k) t^{1/k-1}.  Few oscillations: composite
Gauss-Legendre with about four panels per period.  Many oscillations: the head
of the range (a bounded number of periods) is done by panels and the tail by
integration by parts, whose remainder after m steps is explicitly
|g^(m-1)(t*)| + |g^(m-1)(T1)| over (2 pi beta)^m; both pieces carry certified
error bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arith import ResourceLimitError, primes_up_to
from .expsums import ExpSumValue
from .intervals import IntervalValue

OSCILLATION_BUDGET = 1e8
DIRECT_SUM_LIMIT = 10**8
V_REL_TOL = 1e-9  # certified error target for v_integral, times U
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class RangeSpec:
    """One variable's range (U, 2U] with phase u^k."""

    k: int
    U: float
    starred: bool = False

    def __post_init__(self):
        if self.U <= 0:
            raise ValueError("U must be positive")
        if self.starred and self.k != 3:
            raise ValueError("the starred range is a cube range")

    @classmethod
    def standard(cls, k: int, N: float) -> "RangeSpec":
        return cls(k, N ** (1.0 / k) / k)

    @classmethod
    def starred_cube(cls, N: float) -> "RangeSpec":
        return cls(3, N ** (5.0 / 18.0) / 3.0, starred=True)

    @property
    def upper(self) -> float:
        return 2.0 * self.U

    @property
    def t_interval(self) -> tuple[float, float]:
        return (self.U**self.k, (2.0 * self.U) ** self.k)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_GL_NODES_FINE, _GL_WEIGHTS_FINE = np.polynomial.legendre.leggauss(24)


def _gl_panels(g, beta: float, a: float, c: float, per_period: float = 4.0) -> tuple[complex, float]:
    """int_a^c e(beta t) g(t) dt by composite Gauss-Legendre; (value, err est)."""
    periods = abs(beta) * (c - a)
    n = max(4, int(per_period * periods) + 1)
    edges = np.linspace(a, c, n + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    half = 0.5 * np.diff(edges)[:, None]

    def run(nodes, weights):
        ts = mid + half * nodes[None, :]
        vals = np.exp(2j * np.pi * beta * ts) * g(ts)
        return complex(np.sum(vals * weights[None, :] * half))

    coarse = run(_GL_NODES, _GL_WEIGHTS)
    fine = run(_GL_NODES_FINE, _GL_WEIGHTS_FINE)
    return fine, 2.0 * abs(fine - coarse) + 1e-15 * abs(fine)


def _power_density(k: int):
    def g(t):
        return (1.0 / k) * np.power(t, 1.0 / k - 1.0)

    return g


def _density_derivative_coeff(k: int, i: int) -> float:
    """Coefficient a_i with g^(i)(t) = (1/k) a_i t^(1/k - 1 - i)."""
    a = 1.0
    for j in range(i):
        a *= 1.0 / k - 1.0 - j
    return a / k


def _tail_by_parts(k: int, beta: float, t_star: float, t1: float, m: int) -> tuple[complex, float]:
    """int_{t*}^{T1} e(beta t) g(t) dt by m integrations by parts, plus remainder bound."""
    total = 0.0 + 0.0j
    denom = 2j * np.pi * beta
    for i in range(1, m + 1):
        a_prev = _density_derivative_coeff(k, i - 1)
        expo = 1.0 / k - i  # power for g^(i-1)
        bnd = lambda t: np.exp(2j * np.pi * beta * t) * a_prev * t**expo
        total += (-1) ** (i - 1) * (bnd(t1) - bnd(t_star)) / denom**i
    a_m = _density_derivative_coeff(k, m - 1)
    rem = (abs(a_m) * (t_star ** (1.0 / k - m) + t1 ** (1.0 / k - m))) / (TWO_PI * abs(beta)) ** m
    return total, rem


def v_integral(rng: RangeSpec, beta: float) -> ExpSumValue:
    """v_k(beta) = int_U^{2U} e(beta u^k) du, certified to V_REL_TOL * U."""
    U = rng.U
    if beta == 0.0:
        return ExpSumValue(complex(U), 1, 1e-16 * U)
    if beta < 0.0:
        v = v_integral(rng, -beta)
        return ExpSumValue(v.value.conjugate(), v.n_terms, v.abs_error)
    k = rng.k
    t0, t1 = rng.t_interval
    if beta * t1 > OSCILLATION_BUDGET:
        raise ResourceLimitError(f"oscillation budget exceeded: beta*(2U)^k = {beta * t1:.3g}")
    g = _power_density(k)
    tol = V_REL_TOL * U
    cycles = beta * (t1 - t0)
    if cycles <= 2000.0:
        per = 4.0
        val, err = _gl_panels(g, beta, t0, t1, per)
        while err > tol and per < 40.0:
            per *= 2.5
            val, err = _gl_panels(g, beta, t0, t1, per)
        return ExpSumValue(val, max(int(per * cycles) + 1, 1), err)
    # long range: panel head up to t* = C/beta, integration by parts beyond
    for head_cycles in (30.0, 300.0, 3000.0):
        t_star = min(t1, max(t0, head_cycles / beta))
        head, err_head = _gl_panels(g, beta, t0, t_star)
        best = None
        for m in range(3, 11):
            tail, rem = _tail_by_parts(k, beta, t_star, t1, m)
            if best is None or rem < best[1]:
                best = (tail, rem)
        tail, rem = best
        if err_head + rem <= tol:
            return ExpSumValue(head + tail, int(4 * head_cycles) + 10, err_head + rem)
    raise ResourceLimitError(f"cannot certify v_integral at beta={beta}, k={k}")


def stationary_bound(rng: RangeSpec, beta: float) -> float:
    """First-derivative-test bound 4/m with m = min phase slope = 2 pi k |beta| U^{k-1}."""
    if beta == 0.0:
        raise ValueError("bound requires beta != 0")
    return 4.0 / (TWO_PI * rng.k * abs(beta) * rng.U ** (rng.k - 1))


def generating_sum(rng: RangeSpec, alpha: float, prime_weighted: bool = False) -> ExpSumValue:
    """F(alpha) = sum over n in (U, 2U] of e(alpha n^k), optionally log p over primes."""
    if rng.upper > DIRECT_SUM_LIMIT:
        raise ResourceLimitError(f"range end {rng.upper:.3g} beyond direct-summation limit")
    lo = int(math.floor(rng.U)) + 1
    hi = int(math.floor(rng.upper))
    if hi < lo:
        return ExpSumValue(0j, 0, 0.0)
    total = 0j
    count = 0
    scale = 0.0
    if prime_weighted:
        ps = primes_up_to(hi)
        chunks = np.array_split(ps[ps > rng.U].astype(float), max(1, hi // 10**7))
        chunks = [(c, np.log(c)) for c in chunks if len(c)]
    else:
        chunks = (
            (np.arange(a, min(a + 10**7, hi + 1), dtype=float), None)
            for a in range(lo, hi + 1, 10**7)
        )
    for ns, w in chunks:
        phases = np.exp(2j * np.pi * alpha * ns**rng.k)
        total += complex(np.sum(phases if w is None else w * phases))
        count += len(ns)
        scale += float(np.sum(w)) if w is not None else len(ns)
    return ExpSumValue(total, count, 1e-14 * scale)


# ---------------------------------------------------------------------------
# singular integral


def _ranges_for(N: float, b: int) -> list[RangeSpec]:
    return [
        RangeSpec.standard(2, N),
        RangeSpec.standard(3, N),
        RangeSpec.standard(3, N),
        RangeSpec.starred_cube(N),
        RangeSpec.starred_cube(N),
        RangeSpec.standard(4, N),
        RangeSpec.standard(b, N),
    ]


def _grid_value(N: float, ranges: list[RangeSpec], bins: int) -> float:
    """7-fold density convolution on [0, 2N] with `bins` cells, read at N."""
    h = 2.0 * N / bins
    edges = np.arange(bins + 1) * h
    acc = None
    for rng in ranges:
        cdf = np.clip(edges ** (1.0 / rng.k), rng.U, rng.upper)
        masses = np.diff(cdf)
        acc = masses if acc is None else np.convolve(acc, masses)[:bins]
    idx = int(round(N / h))
    return float(acc[min(idx, bins - 1)]) / h


def singular_integral_J(N: float, b: int, bins: int = 4096) -> IntervalValue:
    """J(N): the convolved archimedean density at N, with refinement enclosure."""
    if N < 10**5:
        raise ValueError("N must be >= 1e5")
    if bins < 10**3:
        raise ValueError("bins must be >= 1000")
    if not 12 <= b <= 35:
        raise ValueError("b must lie in 12..35")
    ranges = _ranges_for(N, b)
    lo_support = sum(r.t_interval[0] for r in ranges)
    hi_support = sum(r.t_interval[1] for r in ranges)
    if not lo_support < N < hi_support:
        return IntervalValue.exact(0.0)
    coarse = _grid_value(N, ranges, bins)
    fine = _grid_value(N, ranges, 2 * bins)
    err = 4.0 * abs(fine - coarse) + 1e-13 * abs(fine)
    return IntervalValue(fine, max(0.0, fine - err), fine + err)


def exponent_fit(b: int, N_list: Sequence[float], bins: int = 4096) -> tuple[float, float]:
    """Least-squares slope of log J against log N, plus rms residual."""
    Ns = [float(N) for N in N_list]
    if len(Ns) < 5:
        raise ValueError("need at least 5 sample points")
    if any(not 10**6 <= N <= 10**12 for N in Ns):
        raise ValueError("N values must lie in [1e6, 1e12]")
    xs = np.log(Ns)
    ys = np.log([singular_integral_J(N, b, bins).point for N in Ns])
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    return float(slope), float(np.sqrt(np.mean(resid**2)))
