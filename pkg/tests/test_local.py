"""Exact congruence counts for x^2 + y1^3+..+y4^3 + z^4 + w^b = n (mod p)."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgsieve import local

primes_small = st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101, 127])
b_values = st.integers(min_value=12, max_value=35)


def test_frozen_brute_values():
    # frozen from the independent nested-loop enumeration
    assert local.count_Lstar(5, 2, 13) == 3272
    assert local.count_K(7, 0, 12) == 8748
    assert (local.count_L(3, 0, 12), local.count_Lstar(3, 0, 12), local.count_K(3, 0, 12)) == (68, 48, 20)
    assert (local.count_K(3, 1, 12), local.count_Lstar(3, 1, 12), local.count_L(3, 1, 12)) == (20, 40, 60)


def test_p2_counts():
    # every variable is the unit 1 mod 2, so the unit form is 7 = 1 (mod 2)
    assert local.count_Lstar(2, 1, 12) == 1
    assert local.count_Lstar(2, 0, 12) == 0
    assert local.count_K(2, 1, 12) == 0
    assert local.count_K(2, 0, 12) == 1
    # with x unrestricted both parities get exactly one solution
    assert local.count_L(2, 0, 12) == 1
    assert local.count_L(2, 1, 12) == 1


@given(primes_small, b_values)
@settings(max_examples=50, deadline=None)
def test_decomposition_L_equals_Lstar_plus_K(p, b):
    v = local.count_vectors(p, b)
    assert v.decomposition_holds()
    for n in range(p):
        assert v.L(n) == v.Lstar(n) + v.K(n)


@given(primes_small, b_values)
@settings(max_examples=50, deadline=None)
def test_lstar_positive(p, b):
    assert local.count_vectors(p, b).lstar_all_positive()


@given(primes_small, b_values, st.integers(min_value=0, max_value=10**9))
@settings(max_examples=50, deadline=None)
def test_mass_identities(p, b, n_shift):
    # summing over all residues counts every tuple once
    v = local.count_vectors(p, b)
    phi = p - 1
    assert sum(v.L(n) for n in range(p)) == p * phi**6
    assert sum(v.K(n) for n in range(p)) == phi**6
    assert sum(v.Lstar(n) for n in range(p)) == phi**7
    n = n_shift % p
    assert 0 <= v.K(n) <= phi**6


def test_error_term_bound_and_sign():
    for p in (13, 17, 97, 499):
        for n in (0, 1, 5):
            ep, bound = local.error_term(p, n, 12)
            assert abs(ep) <= bound
            if p >= 13:
                assert abs(ep) < (p - 1) ** 7


def test_ep_bound_formula():
    p = 11
    rt = math.sqrt(p)
    want = (p - 1) ** 2 * (rt + 1) * (2 * rt + 1) ** 4 * (3 * rt + 1)
    assert local.ep_bound(p) == pytest.approx(want)


def test_local_counts_dataclass():
    c = local.local_counts(13, 5, 18)
    assert c.L == c.Lstar + c.K
    assert c.Ep == 13 * c.Lstar - 12**7
    assert abs(c.Ep) <= c.Ep_bound


def test_verify_small_primes_all_true():
    res = local.verify_small_primes(20)
    # one residue class at p = 2 (odd targets only), all residues at 3..11
    assert len(res) == 1 + 3 + 5 + 7 + 11
    assert all(res.values())


def test_argument_validation():
    with pytest.raises(ValueError):
        local.count_L(4, 1, 12)  # not prime
    with pytest.raises(ValueError):
        local.count_L(7, 9, 12)  # residue out of range
    with pytest.raises(ValueError):
        local.count_L(7, 1, 11)  # exponent out of range
