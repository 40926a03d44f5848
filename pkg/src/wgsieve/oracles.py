"""Independent brute-force and identity oracles.

Everything here deliberately avoids the production code paths: congruence
counts come from literal nested loops (numba-compiled), the orthogonality
identity is checked against an exact integer convolution, iterated integrals
against dense cumulative-trapezoid grids, and the singular integral against a
Monte-Carlo sampler.  Production modules are imported only where a comparison
is the point of the function.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numba
import numpy as np

from .arith import ResourceLimitError, power_residue_histogram, primes_up_to

BRUTE_Q_LIMIT = 13
ORTHOGONALITY_Q_LIMIT = 120
CUBE_COUNT_LIMIT = 10**8

VARIANTS = ("L", "K", "Lstar")


# ---------------------------------------------------------------------------
# brute-force congruence counts


@numba.njit(cache=True)
def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@numba.njit(cache=True)
def _brute_all_residues(q: int, b: int) -> np.ndarray:
    """Rows K, Lstar, L of counts over n_res = 0..q-1, by literal loops."""
    n_units = 0
    units = np.empty(q, dtype=np.int64)
    for u in range(1, q + 1):
        if _gcd(u, q) == 1:
            units[n_units] = u
            n_units += 1
    units = units[:n_units]
    p3 = np.empty(n_units, dtype=np.int64)
    p4 = np.empty(n_units, dtype=np.int64)
    pb = np.empty(n_units, dtype=np.int64)
    for i in range(n_units):
        u = units[i]
        p3[i] = u**3 % q
        p4[i] = u**4 % q
        acc = 1
        for _ in range(b):
            acc = acc * u % q
        pb[i] = acc
    out = np.zeros((3, q), dtype=np.int64)
    for i1 in range(n_units):
        for i2 in range(n_units):
            for i3 in range(n_units):
                for i4 in range(n_units):
                    for i5 in range(n_units):
                        base = p3[i1] + p3[i2] + p3[i3] + p3[i4] + p4[i5]
                        for i6 in range(n_units):
                            s = (base + pb[i6]) % q
                            out[0, s] += 1
    # x a unit: Lstar; x unrestricted in 1..q: L
    for r in range(q):
        k = out[0, r]
        if k == 0:
            continue
        for i in range(n_units):
            out[1, (r + units[i] ** 2) % q] += k
        for x in range(1, q + 1):
            out[2, (r + x * x) % q] += k
    return out


_brute_cache: dict[tuple[int, int], np.ndarray] = {}


def brute_congruence_count(q: int, n_res: int, b: int, variant: str) -> int:
    """Literal nested-loop count; the anchor for the convolution engine."""
    if q > BRUTE_Q_LIMIT:
        raise ResourceLimitError(f"brute loops capped at q <= {BRUTE_Q_LIMIT}")
    if q < 1 or not 0 <= n_res < q:
        raise ValueError("need q >= 1 and 0 <= n_res < q")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    key = (q, b)
    if key not in _brute_cache:
        _brute_cache[key] = _brute_all_residues(q, b)
    row = {"K": 0, "Lstar": 1, "L": 2}[variant]
    return int(_brute_cache[key][row, n_res])


# ---------------------------------------------------------------------------
# exact convolution count and the orthogonality identity


def convolution_count_vector(q: int, b: int) -> np.ndarray:
    """L(q, n) for all n, by exact int64 acyclic convolution folded mod q."""
    hs = [
        power_residue_histogram(3, q, True).counts,
        power_residue_histogram(3, q, True).counts,
        power_residue_histogram(3, q, True).counts,
        power_residue_histogram(3, q, True).counts,
        power_residue_histogram(4, q, True).counts,
        power_residue_histogram(b, q, True).counts,
        power_residue_histogram(2, q, False).counts,
    ]
    acc = np.array([1], dtype=np.int64)
    for h in hs:
        acc = np.convolve(acc, h.astype(np.int64))
    folded = np.zeros(q, dtype=np.int64)
    np.add.at(folded, np.arange(len(acc)) % q, acc)
    return folded


def orthogonality_check(q: int, N: int, b: int) -> float:
    """|(1/q) sum_a S_2 S_3*^4 S_4* S_b* e(-aN/q) - L(q,N)|, two independent routes."""
    if not 1 <= q <= ORTHOGONALITY_Q_LIMIT:
        raise ValueError(f"q must lie in 1..{ORTHOGONALITY_Q_LIMIT}")
    from .expsums import all_residue_sums

    s2 = all_residue_sums(2, q, units_only=False)
    s3 = all_residue_sums(3, q, units_only=True)
    s4 = all_residue_sums(4, q, units_only=True)
    sb = all_residue_sums(b, q, units_only=True)
    a = np.arange(q)
    lhs = np.sum(
        s2 * s3**4 * s4 * sb * np.exp((-2j * np.pi / q) * ((a * (N % q)) % q))
    ) / q
    rhs = convolution_count_vector(q, b)[N % q]
    return abs(complex(lhs) - rhs)


# ---------------------------------------------------------------------------
# dense-grid quadrature oracles for the iterated integrals


def simpson_log_integral(T: float, panels: int = 10**6) -> float:
    """int_2^T log(u-1)/u du by composite Simpson on a uniform grid."""
    if T <= 2:
        return 0.0
    if panels % 2:
        panels += 1
    u = np.linspace(2.0, T, panels + 1)
    f = np.log(u - 1.0) / u
    w = np.ones(panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.sum(w * f) * (T - 2.0) / (3 * panels))


def tensor_quadrature_c_r(r: int, s: float, n_grid: int = 2**20) -> float:
    """I_{r-2}(s) by chained cumulative trapezoid sums on a log-dense grid.

    Independent of the Chebyshev level machinery: levels are tabulated on one
    shared grid, geometric in (u - 1), and looked up by linear interpolation.
    """
    if r < 3:
        raise ValueError("r must be >= 3")
    if s <= r - 1:
        return 0.0
    grid = 1.0 + np.geomspace(1.0, s - 1.0, n_grid)
    vals = np.log(grid - 1.0) / grid
    vals[0] = 0.0  # limit at u = 2
    level = _cumtrap(grid, vals)
    for j in range(2, r - 1):
        integrand = np.interp(grid - 1.0, grid, level, left=0.0) / grid
        integrand[grid < j + 1] = 0.0
        level = _cumtrap(grid, integrand)
    return float(level[-1])


def _cumtrap(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.empty_like(y)
    out[0] = 0.0
    np.cumsum(0.5 * (y[1:] + y[:-1]) * np.diff(x), out=out[1:])
    return out


# ---------------------------------------------------------------------------
# prime-sum surrogate for c_r


def nr_prime_sum(r: int, U: float, z: float) -> tuple[float, float, float]:
    """(sum over the almost-prime family, its integral prediction, ratio).

    The family N_r(U, z) consists of l = p_1 ... p_{r-1} with
    z <= p_1 <= ... <= p_{r-1} and p_1 ... p_{r-2} p_{r-1}^2 <= 2U; each l
    contributes 1/(l log(U/l)).  The prediction integrates the same shape:
    iterated_integral(r, log U / log z - 1) / log U.  The offset of one in the
    budget keeps prediction and sum asymptotically matched; the raw ratio
    log U/log z overshoots the enumeration's actual support.
    """
    if U > 10**8:
        raise ResourceLimitError("U capped at 1e8 for direct enumeration")
    if z < 20:
        raise ValueError("z must be >= 20")
    if r < 3:
        raise ValueError("r must be >= 3")
    logU = math.log(U)
    if z ** (r - 1) > 2 * U:
        return (0.0, 0.0, float("nan"))
    ps = primes_up_to(int(math.sqrt(2 * U / z ** (r - 2))) + 1)
    ps = ps[ps >= z].astype(np.int64)
    terms: list[float] = []

    def rec(start: int, prod: int, depth: int) -> None:
        if depth == r - 2:
            # last factor p with prod * p^2 <= 2U and p >= previous
            for p in ps[start:]:
                if prod * int(p) * int(p) > 2 * U:
                    break
                l = prod * int(p)
                terms.append(1.0 / (l * (logU - math.log(l))))
            return
        for i in range(start, len(ps)):
            p = int(ps[i])
            if prod * p * p > 2 * U:  # even the shortest completion fails
                break
            rec(i, prod * p, depth + 1)

    rec(0, 1, 0)
    total = float(math.fsum(terms))
    from .buchstab import iterated_integral

    budget = logU / math.log(z) - 1.0
    pred = iterated_integral(r, budget, 1e-8).point / logU if budget > r - 1 else 0.0
    ratio = total / pred if pred else float("nan")
    return (total, pred, ratio)


# ---------------------------------------------------------------------------
# cube mean-value count


def cube_meanvalue_count(N: int) -> int:
    """Exact count of n1^3+n2^3+n3^3 = m1^3+m2^3+m3^3 over the two cube ranges."""
    if N > CUBE_COUNT_LIMIT:
        raise ResourceLimitError(f"N capped at {CUBE_COUNT_LIMIT}")
    U3 = N ** (1 / 3) / 3
    U3s = N ** (5 / 18) / 3
    r1 = np.arange(int(U3) + 1, int(2 * U3) + 1, dtype=np.int64)
    r2 = np.arange(int(U3s) + 1, int(2 * U3s) + 1, dtype=np.int64)
    if len(r1) == 0 or len(r2) == 0:
        return 0
    sums = (
        r1[:, None, None] ** 3 + r2[None, :, None] ** 3 + r2[None, None, :] ** 3
    ).ravel()
    if sums.nbytes > 2 * 10**9:
        raise ResourceLimitError("hash-join exceeds the memory budget")
    _, counts = np.unique(sums, return_counts=True)
    return int(np.sum(counts * counts))


def cube_ranges(N: int) -> tuple[int, int]:
    """(size of the plain cube range, size of the starred range)."""
    U3 = N ** (1 / 3) / 3
    U3s = N ** (5 / 18) / 3
    return (int(2 * U3) - int(U3), int(2 * U3s) - int(U3s))


# ---------------------------------------------------------------------------
# Monte-Carlo oracle for the singular integral


def mc_singular_integral(N: float, b: int, samples: int = 10**7, seed: int = 7) -> float:
    """J(N) by sampling the six power variables and averaging the square density.

    The square variable has the widest image interval (N/4, N], so the sampler
    measures that coordinate's density rho_2(N - rest) = (1/2) t^{-1/2}; aiming
    at the b-th variable instead would give a window of relative width about
    N^(1/b - 1), which no realistic sample count can hit.
    """
    from .archimedean import RangeSpec

    ranges = [
        RangeSpec.standard(3, N),
        RangeSpec.standard(3, N),
        RangeSpec.starred_cube(N),
        RangeSpec.starred_cube(N),
        RangeSpec.standard(4, N),
        RangeSpec.standard(b, N),
    ]
    sq = RangeSpec.standard(2, N)
    t_lo, t_hi = sq.t_interval
    vol = float(np.prod([r.U for r in ranges]))  # each interval has length U
    rng = np.random.default_rng(seed)
    total = 0.0
    done = 0
    while done < samples:
        m = min(samples - done, 2 * 10**6)
        rest = np.zeros(m)
        for r in ranges:
            rest += rng.uniform(r.U, r.upper, m) ** r.k
        rem = N - rest
        ok = (rem > t_lo) & (rem <= t_hi)
        total += float(np.sum(0.5 / np.sqrt(rem[ok])))
        done += m
    return total / samples * vol


# ---------------------------------------------------------------------------
# suite runners


@dataclass(frozen=True)
class OracleReport:
    name: str
    cases: int
    max_deviation: float
    passed: bool
    seconds: float


def _report(name: str, cases: int, dev: float, tol: float, t0: float) -> OracleReport:
    return OracleReport(name, cases, dev, dev <= tol, time.perf_counter() - t0)


def run_local_suite() -> list[OracleReport]:
    from . import local

    out = []
    t0 = time.perf_counter()
    dev, cases = 0.0, 0
    for p in (2, 3, 5, 7, 11, 13):
        for bb in (12, 18, 24, 35):
            vec = local.count_vectors(p, bb)
            brute = _brute_cache.get((p, bb))
            if brute is None:
                brute = _brute_cache[(p, bb)] = _brute_all_residues(p, bb)
            for n in range(p):
                dev = max(
                    dev,
                    abs(vec.K(n) - int(brute[0, n])),
                    abs(vec.Lstar(n) - int(brute[1, n])),
                    abs(vec.L(n) - int(brute[2, n])),
                )
                cases += 3
    out.append(_report("local.brute_vs_convolution", cases, dev, 0.0, t0))

    t0 = time.perf_counter()
    dev, cases = 0.0, 0
    for p in primes_up_to(100).tolist():
        for bb in (12, 35):
            vec = local.count_vectors(p, bb)
            bound = local.ep_bound(p)
            for n in range(p):
                ep = p * vec.Lstar(n) - (p - 1) ** 7
                dev = max(dev, abs(ep) / bound)
                cases += 1
    out.append(_report("local.ep_bound_margin", cases, dev, 1.0, t0))
    return out


def run_series_suite() -> list[OracleReport]:
    from .series import A_coeff, B_coeff
    from .arith import euler_phi

    out = []
    t0 = time.perf_counter()
    dev, cases = 0.0, 0
    for p in primes_up_to(200).tolist():
        for N in (1, 23, 10**9 + 7):
            a_exact = float(A_coeff(p, N, 12))
            a_from_b = B_coeff(p, 1, N, 12).real / (p * euler_phi(p) ** 6)
            # relative with an absolute floor: A can vanish exactly (the B
            # route then returns pure rounding noise, ~1e-17)
            dev = max(dev, abs(a_from_b - a_exact) / (abs(a_exact) + 1e-7))
            cases += 1
    out.append(_report("series.two_route_A", cases, dev, 1e-8, t0))

    t0 = time.perf_counter()
    dev, cases = 0.0, 0
    for p in (2, 3, 5):
        pl = p * p
        while pl <= 1000:
            dev = max(dev, abs(B_coeff(pl, 1, 23, 12)))
            cases += 1
            pl *= p
    out.append(_report("series.prime_power_vanishing", cases, dev, 1e-6, t0))
    return out


def run_rosser_suite(n_random: int = 40) -> list[OracleReport]:
    from . import rosser

    out = []
    t0 = time.perf_counter()
    dev, cases = 0.0, 0
    rng = np.random.default_rng(2)
    for i in range(n_random):
        z = float(rng.integers(20, 200))
        D = float(rng.choice([100.0, 10**4, 10**6]))
        g = rosser.density_random(z, int(rng.integers(10**6)))
        low = rosser.sifted_sum(rosser.LOWER, g, z, D)
        up = rosser.sifted_sum(rosser.UPPER, g, z, D)
        mid = rosser.direct_product(g, z)
        dev = max(dev, low - mid, mid - up)
        cases += 1
    out.append(_report("rosser.sandwich_random", cases, max(dev, 0.0), 1e-12, t0))

    t0 = time.perf_counter()
    worst = 0.0
    cases = 0
    ps = [p for p in primes_up_to(20).tolist() if p > 2]
    for mask in range(1 << len(ps)):
        n = 1
        for i, p in enumerate(ps):
            if mask >> i & 1:
                n *= p
        lo_s, up_s, e_n = rosser.fundamental_check(n, 10**4, 20)
        worst = max(worst, lo_s - e_n, e_n - up_s)
        cases += 1
    out.append(_report("rosser.fundamental_exhaustive", cases, max(worst, 0.0), 0.0, t0))
    return out


def run_buchstab_suite() -> list[OracleReport]:
    from . import buchstab

    out = []
    t0 = time.perf_counter()
    dev, cases = 0.0, 0
    for r in (3, 4, 5):
        for bb in (12, 24):
            s = float(buchstab.budget(bb).s)
            lev = buchstab.c_r(r, bb, 1e-8).point
            ref = tensor_quadrature_c_r(r, s)
            dev = max(dev, abs(lev - ref) / ref)
            cases += 1
    out.append(_report("buchstab.tensor_cross_check", cases, dev, 1e-4, t0))

    t0 = time.perf_counter()
    dev = abs(buchstab.sieve_f(3.0) / buchstab.sieve_F(3.0) - math.log(2))
    out.append(_report("buchstab.f3_over_F3", 1, dev, 1e-12, t0))
    return out


def run_archimedean_suite() -> list[OracleReport]:
    from . import archimedean as arch

    out = []
    t0 = time.perf_counter()
    dev, cases = 0.0, 0
    rng = np.random.default_rng(5)
    for _ in range(100):
        k = int(rng.integers(2, 8))
        spec = arch.RangeSpec(k, float(rng.uniform(5.0, 50.0)))
        beta = float(rng.uniform(1e-9, 1.0)) / spec.t_interval[1] * 100
        v = arch.v_integral(spec, beta)
        bound = arch.stationary_bound(spec, beta)
        excess = (abs(v) - (bound + v.abs_error)) / spec.U
        dev = max(dev, excess)
        cases += 1
    out.append(_report("archimedean.derivative_test_bound", cases, max(dev, 0.0), 0.0, t0))

    t0 = time.perf_counter()
    N = 10**9
    j = arch.singular_integral_J(N, 12, bins=4096)
    mc = mc_singular_integral(N, 12, samples=10**7)
    dev = abs(mc - j.point) / j.point
    out.append(_report("archimedean.J_vs_montecarlo", 1, dev, 0.03, t0))
    return out


_SUITES: dict[str, Callable[[], list[OracleReport]]] = {
    "local": run_local_suite,
    "series": run_series_suite,
    "rosser": run_rosser_suite,
    "buchstab": run_buchstab_suite,
    "archimedean": run_archimedean_suite,
}


def run_suites(which: str = "all") -> list[OracleReport]:
    if which == "all":
        names = list(_SUITES)
    elif which in _SUITES:
        names = [which]
    else:
        raise ValueError(f"unknown suite {which!r}; options: {sorted(_SUITES)} or 'all'")
    reports = []
    for name in names:
        reports.extend(_SUITES[name]())
    return reports
