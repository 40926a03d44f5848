"""Sieve weight truncation rules and the fundamental sandwich."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgsieve import rosser
from wgsieve.arith import ResourceLimitError

ODD_PRIMES_SMALL = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def test_fundamental_worked_example():
    assert rosser.fundamental_check(15, 10, 7) == (-1, 1, 0)
    assert rosser.fundamental_check(1, 10, 7) == (1, 1, 1)


def test_lambda_spot_values():
    assert rosser.lambda_weight(rosser.UPPER, 1, 100, 10) == 1
    # upper: p1^3 = 125 > 100 kills d = 15; lower: p1 p2^3 = 135 > 100
    assert rosser.lambda_weight(rosser.UPPER, 15, 100, 10) == 0
    assert rosser.lambda_weight(rosser.LOWER, 15, 100, 10) == 0
    # lower: 7 * 5^3 = 875 <= 1e4, no further even positions
    assert rosser.lambda_weight(rosser.LOWER, 105, 10**4, 10) == -1
    # singletons always survive the lower rule
    assert rosser.lambda_weight(rosser.LOWER, 7, 100, 10) == -1


def test_lambda_rejects_bad_d():
    with pytest.raises(ValueError):
        rosser.lambda_weight(rosser.UPPER, 6, 100, 10)  # even
    with pytest.raises(ValueError):
        rosser.lambda_weight(rosser.UPPER, 9, 100, 10)  # not squarefree
    with pytest.raises(ValueError):
        rosser.lambda_weight(rosser.UPPER, 11, 100, 10)  # prime >= z


@given(st.lists(st.sampled_from(ODD_PRIMES_SMALL), unique=True, max_size=6),
       st.sampled_from([10.0, 10**2, 10**4, 10**6]))
@settings(max_examples=120)
def test_fundamental_sandwich_random(ps, D):
    n = math.prod(ps) if ps else 1
    lo, hi, e = rosser.fundamental_check(n, D, 40)
    assert lo <= e <= hi


def test_sifted_sum_equals_weight_table_sum(rng):
    z, D = 30.0, 10**4
    g = {int(p): float(rng.uniform(0, 0.8)) for p in rosser.primes_up_to(29) if p > 2}
    for sign in (rosser.LOWER, rosser.UPPER):
        tbl = rosser.RosserWeightTable.build(sign, D, z)
        direct = 0.0
        for d, lam in tbl.weights.items():
            prod = 1.0
            for p, _ in rosser.factorize(d).factors:
                prod *= g[p]
            direct += lam * prod
        assert rosser.sifted_sum(sign, g, z, D) == pytest.approx(direct, rel=1e-12)


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=60, deadline=None)
def test_sandwich_random_density(seed):
    z, D = 60.0, 10**5
    g = rosser.density_random(z, seed)
    lo = rosser.sifted_sum(rosser.LOWER, g, z, D)
    hi = rosser.sifted_sum(rosser.UPPER, g, z, D)
    V = rosser.direct_product(g, z)
    assert lo <= V <= hi


def test_sandwich_with_count_density():
    z, D = 100.0, 10**6
    g = rosser.density_from_counts(1000003, 12, z)
    assert all(0 <= v < 1 for v in g.values())
    lo = rosser.sifted_sum(rosser.LOWER, g, z, D)
    hi = rosser.sifted_sum(rosser.UPPER, g, z, D)
    V = rosser.direct_product(g, z)
    assert lo <= V <= hi
    assert hi - lo < 1.0


def test_density_validation():
    with pytest.raises(ValueError):
        rosser.sifted_sum(rosser.UPPER, lambda p: 1.0, 20, 100)


def test_node_budget(monkeypatch):
    monkeypatch.setattr(rosser, "NODE_LIMIT", 5)
    with pytest.raises(ResourceLimitError):
        rosser.sifted_sum(rosser.UPPER, rosser.density_uniform(40), 40, 10**6)


def test_weight_table_invariants():
    tbl = rosser.RosserWeightTable.build(rosser.LOWER, 100.0, 10.0)
    assert dict(tbl.weights) == {1: 1, 3: -1, 5: -1, 7: -1}
    assert tbl.weight(15) == 0
    up = rosser.RosserWeightTable.build(rosser.UPPER, 10**4, 12.0)
    for d in up.weights:
        assert d == 1 or rosser.lambda_weight(rosser.UPPER, d, 10**4, 12.0) == up.weight(d)
