"""Exponential sums: brute-force agreement, multiplicativity, vanishing."""
import cmath
import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from wgsieve.arith import CharacterTable
from wgsieve.expsums import (
    all_residue_sums,
    character_sum,
    complete_sum,
    gamma_cutoff,
    unit_sum,
)


def brute_complete(k, q, a):
    return sum(
        cmath.exp(2j * cmath.pi * (a * pow(n, k, q) % q) / q) for n in range(1, q + 1)
    )


def brute_unit(k, q, a):
    return sum(
        cmath.exp(2j * cmath.pi * (a * pow(n, k, q) % q) / q)
        for n in range(1, q + 1)
        if math.gcd(n, q) == 1
    )


@given(
    st.integers(min_value=1, max_value=40),
    st.integers(min_value=1, max_value=200),
    st.integers(min_value=0, max_value=10**6),
)
@settings(max_examples=80)
def test_complete_sum_matches_brute(k, q, a):
    v = complete_sum(k, q, a)
    assert abs(v.value - brute_complete(k, q, a)) <= max(v.abs_error, 1e-9)


@given(
    st.integers(min_value=1, max_value=40),
    st.integers(min_value=1, max_value=200),
    st.integers(min_value=0, max_value=10**6),
)
@settings(max_examples=80)
def test_unit_sum_matches_brute(k, q, a):
    v = unit_sum(k, q, a)
    assert abs(v.value - brute_unit(k, q, a)) <= max(v.abs_error, 1e-9)


def test_all_residue_sums_vector():
    q = 36
    vec = all_residue_sums(3, q, units_only=True)
    for a in (0, 1, 7, 35):
        assert abs(vec[a] - brute_unit(3, q, a)) < 1e-9


@given(st.data())
@settings(max_examples=40)
def test_twisted_multiplicativity(data):
    # S_k(q1 q2, a) = S_k(q1, a q2^{k-1}) S_k(q2, a q1^{k-1}) for (q1, q2) = 1
    k = data.draw(st.integers(min_value=2, max_value=12))
    q1 = data.draw(st.integers(min_value=2, max_value=60))
    q2 = data.draw(st.integers(min_value=2, max_value=60).filter(lambda x: math.gcd(x, q1) == 1))
    q = q1 * q2
    a = data.draw(st.integers(min_value=1, max_value=q - 1).filter(lambda x: math.gcd(x, q) == 1))
    lhs = complete_sum(k, q, a).value
    rhs = complete_sum(k, q1, a * pow(q2, k - 1, q1)).value * complete_sum(
        k, q2, a * pow(q1, k - 1, q2)
    ).value
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))
    lhs_u = unit_sum(k, q, a).value
    rhs_u = unit_sum(k, q1, a * pow(q2, k - 1, q1)).value * unit_sum(
        k, q2, a * pow(q1, k - 1, q2)
    ).value
    assert abs(lhs_u - rhs_u) <= 1e-8 * max(1.0, abs(lhs_u))


def test_hua_style_bound_at_primes():
    # |S_j*(p, a)| <= ((j, p-1) - 1) sqrt(p) + 1 for (a, p) = 1
    for p in (11, 13, 97, 401):
        for j in (2, 3, 4, 12, 35):
            cap = (math.gcd(j, p - 1) - 1) * math.sqrt(p) + 1
            for a in (1, 2, p - 1):
                assert abs(unit_sum(j, p, a)) <= cap + 1e-9


def test_gamma_cutoff_values():
    assert gamma_cutoff(3, 5) == 2  # p does not divide k
    assert gamma_cutoff(12, 3) == 3  # 3^1 || 12
    assert gamma_cutoff(12, 2) == 5  # 2^2 || 12, p = 2 branch
    assert gamma_cutoff(16, 2) == 7


@given(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(min_value=1, max_value=24),
)
@settings(max_examples=30)
def test_unit_sum_vanishes_beyond_cutoff(p, k):
    gamma = gamma_cutoff(k, p)
    for extra in (0, 1):
        q = p ** (gamma + extra)
        if q > 3000:
            continue
        for a in (1, q - 1):
            assert abs(unit_sum(k, q, a)) < 1e-8


def test_character_sum_quadratic_gauss():
    # for the quadratic character, |G_1(chi, a)| = sqrt(p)
    p = 29
    tbl = CharacterTable(p)
    v = character_sum(1, tbl, (p - 1) // 2, 1)
    assert abs(abs(v.value) - math.sqrt(p)) < 1e-9
