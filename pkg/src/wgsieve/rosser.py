"""Rosser weights for the linear sieve, with exact sandwich sums.

The weights lambda(d) of level D live on squarefree d composed of odd primes
below z, written d = p1 p2 ... pl with p1 > p2 > ... > pl.  The upper weight
equals mu(d) when

    p1 p2 ... p_{2l} p_{2l+1}^3 <= D   for every 0 <= l <= (l-1)/2,

the lower weight equals mu(d) when

    p1 p2 ... p_{2l-1} p_{2l}^3 <= D   for every 1 <= l <= l/2,

and both vanish otherwise.  These truncation rules give the exact fundamental
inequality sum_{d|n} lambda^-(d) <= [n = 1] <= sum_{d|n} lambda^+(d), which is
what the sandwich tests exercise; any analytic statement about how close the
sums come to f and F is out of scope here.

Support is enumerated by depth-first descent over decreasing primes; the
prefix conditions already bound every supported d by D, so the tree is tiny
compared to the full divisor lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .arith import ResourceLimitError, factorize, primes_up_to

UPPER = "upper"
LOWER = "lower"
NODE_LIMIT = 10**8


def _check_sign(sign: str) -> str:
    if sign not in (UPPER, LOWER):
        raise ValueError(f"sign must be '{UPPER}' or '{LOWER}'")
    return sign


def _desc_odd_prime_factors(d: int, z: float) -> list[int]:
    fac = factorize(d).factors
    if any(e != 1 for _, e in fac):
        raise ValueError(f"d = {d} is not squarefree")
    ps = [p for p, _ in fac]
    if any(p == 2 for p in ps):
        raise ValueError(f"d = {d} is even")
    if any(p >= z for p in ps):
        raise ValueError(f"d = {d} has a prime factor >= z = {z}")
    return sorted(ps, reverse=True)


def _conditions_hold(ps_desc: list[int], sign: str, D: float) -> bool:
    prefix = 1
    for i, p in enumerate(ps_desc):
        pos = i + 1
        check = pos % 2 == 1 if sign == UPPER else pos % 2 == 0
        if check and prefix * p**3 > D:
            return False
        prefix *= p
    return True


def lambda_weight(sign: str, d: int, D: float, z: float) -> int:
    """lambda^{sign}(d) in {-1, 0, +1}."""
    _check_sign(sign)
    if D < 2:
        raise ValueError("D must be >= 2")
    if d == 1:
        return 1
    if d < 1:
        raise ValueError("d must be >= 1")
    ps = _desc_odd_prime_factors(d, z)
    if not _conditions_hold(ps, sign, D):
        return 0
    return -1 if len(ps) % 2 else 1


def fundamental_check(n: int, D: float, z: float) -> tuple[int, int, int]:
    """(sum of lower weights over d|n, same for upper, [n=1]); asserts the sandwich."""
    if n == 1:
        return (1, 1, 1)
    ps = _desc_odd_prime_factors(n, z)
    sums = {UPPER: 0, LOWER: 0}
    for mask in range(1 << len(ps)):
        sub = [p for i, p in enumerate(ps) if mask >> i & 1]
        mu = -1 if len(sub) % 2 else 1
        for sign in (UPPER, LOWER):
            if not sub or _conditions_hold(sub, sign, D):
                sums[sign] += mu
    e_n = int(n == 1)
    if not sums[LOWER] <= e_n <= sums[UPPER]:
        raise AssertionError(f"sandwich violated at n={n}, D={D}: {sums}")
    return (sums[LOWER], sums[UPPER], e_n)


def _dfs_sum(
    sign: str,
    primes_desc: list[int],
    g: Callable[[int], float],
    D: float,
    budget: list[int],
) -> float:
    """Sum of mu(d) * prod g(p) over the weight support, minus nothing: d=1 included."""

    def rec(start: int, depth: int, prefix: int, gprod: float) -> float:
        total = gprod if depth % 2 == 0 else -gprod
        for i in range(start, len(primes_desc)):
            p = primes_desc[i]
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceLimitError(f"support exceeds {NODE_LIMIT} nodes")
            pos = depth + 1
            check = pos % 2 == 1 if sign == UPPER else pos % 2 == 0
            if check and prefix * p**3 > D:
                continue
            gp = g(p)
            if gp != 0.0:
                total += rec(i + 1, depth + 1, prefix * p, gprod * gp)
        return total

    return rec(0, 0, 1, 1.0)


def sifted_sum(
    sign: str,
    g: Mapping[int, float] | Callable[[int], float],
    z: float,
    D: float,
) -> float:
    """sum over supported d of lambda(d) * prod_{p|d} g(p), exactly enumerated."""
    _check_sign(sign)
    if D < 2:
        raise ValueError("D must be >= 2")
    gv = g.__getitem__ if isinstance(g, Mapping) else g
    primes_desc = [int(p) for p in primes_up_to(int(z) + 1)[::-1] if 2 < p < z]
    for p in primes_desc:
        if not 0 <= gv(p) < 1:
            raise ValueError(f"g({p}) = {gv(p)} outside [0, 1)")
    return _dfs_sum(sign, primes_desc, gv, D, [NODE_LIMIT])


def direct_product(g: Mapping[int, float] | Callable[[int], float], z: float) -> float:
    """prod over odd p < z of (1 - g(p)): the quantity the two sums sandwich."""
    gv = g.__getitem__ if isinstance(g, Mapping) else g
    out = 1.0
    for p in primes_up_to(max(int(z) + 1, 3)).tolist():
        if 2 < p < z:
            out *= 1.0 - gv(p)
    return out


@dataclass(frozen=True)
class RosserWeightTable:
    """Nonzero weights of one sign, materialised for small (z, D)."""

    sign: str
    D: float
    z: float
    weights: Mapping[int, int]

    def __post_init__(self):
        if self.weights.get(1) != 1:
            raise ValueError("lambda(1) must be 1")
        for d, lam in self.weights.items():
            if lam not in (-1, 1):
                raise ValueError(f"stored weight {lam} at d={d} (zeros are implicit)")
            if d > self.D:
                raise ValueError(f"supported d = {d} exceeds level D = {self.D}")

    def weight(self, d: int) -> int:
        return self.weights.get(d, 0)

    @classmethod
    def build(cls, sign: str, D: float, z: float) -> "RosserWeightTable":
        _check_sign(sign)
        primes_desc = [int(p) for p in primes_up_to(int(z) + 1)[::-1] if 2 < p < z]
        table: dict[int, int] = {}
        budget = [NODE_LIMIT]

        def rec(start: int, depth: int, prefix: int) -> None:
            table[prefix] = -1 if depth % 2 else 1
            for i in range(start, len(primes_desc)):
                p = primes_desc[i]
                budget[0] -= 1
                if budget[0] < 0:
                    raise ResourceLimitError(f"support exceeds {NODE_LIMIT} nodes")
                pos = depth + 1
                check = pos % 2 == 1 if sign == UPPER else pos % 2 == 0
                if check and prefix * p**3 > D:
                    continue
                rec(i + 1, depth + 1, prefix * p)

        rec(0, 0, 1)
        return cls(sign, D, z, table)


# --- density constructors shared by the CLI and the test-suite -------------


def density_from_counts(N: int, b: int, z: float) -> dict[int, float]:
    """g(p) = omega(p)/p from the exact congruence counts."""
    from .series import omega_p

    return {
        int(p): float(omega_p(int(p), N, b)) / int(p)
        for p in primes_up_to(max(int(z) + 1, 3))
        if 2 < p < z
    }


def density_uniform(z: float) -> dict[int, float]:
    """g(p) = 1/p, the classical dimension-1 toy density."""
    return {int(p): 1.0 / int(p) for p in primes_up_to(max(int(z) + 1, 3)) if 2 < p < z}


def density_random(z: float, seed: int) -> dict[int, float]:
    rng = np.random.default_rng(seed)
    ps = [int(p) for p in primes_up_to(max(int(z) + 1, 3)) if 2 < p < z]
    return {p: float(x) for p, x in zip(ps, rng.uniform(0.0, 0.999, len(ps)))}
