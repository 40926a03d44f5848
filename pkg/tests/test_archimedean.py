"""Oscillatory range integrals, generating sums, and the density convolution."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgsieve import archimedean as arch


def test_range_spec_construction():
    r = arch.RangeSpec.standard(3, 10**9)
    assert r.U == pytest.approx(10**3 / 3)
    assert r.upper == 2 * r.U
    lo, hi = r.t_interval
    assert lo == pytest.approx(r.U**3) and hi == pytest.approx(8 * r.U**3)
    s = arch.RangeSpec.starred_cube(10**9)
    assert s.U == pytest.approx(10 ** (9 * 5 / 18) / 3)
    with pytest.raises(ValueError):
        arch.RangeSpec(k=4, U=10.0, starred=True)


def test_v_integral_at_zero_is_length():
    r = arch.RangeSpec.standard(3, 10**9)
    v = arch.v_integral(r, 0.0)
    assert v.value == pytest.approx(r.U)


def test_v_integral_conjugate_symmetry():
    r = arch.RangeSpec.standard(2, 10**6)
    vp = arch.v_integral(r, 3e-6)
    vm = arch.v_integral(r, -3e-6)
    assert vm.value == pytest.approx(vp.value.conjugate(), rel=1e-12)


def test_v_integral_trapezoid_oracle():
    # brute 10^6-panel trapezoid of 0.5 t^{-1/2} e(beta t) on [U^2, 4U^2]
    N = 10**6
    r = arch.RangeSpec.standard(2, N)
    beta = 1.0 / N
    t = np.linspace(r.U**2, 4 * r.U**2, 10**6 + 1)
    f = 0.5 / np.sqrt(t) * np.exp(2j * np.pi * beta * t)
    brute = complex(np.trapezoid(f, t))
    v = arch.v_integral(r, beta)
    assert abs(v.value - brute) <= 1e-8 * abs(brute)


def test_v_integral_certified_error():
    r = arch.RangeSpec.standard(3, 10**9)
    v = arch.v_integral(r, 5e-7)
    assert v.abs_error <= 1e-9 * r.U


@given(
    st.integers(min_value=2, max_value=8),
    st.floats(min_value=5, max_value=50),
    st.floats(min_value=-8, max_value=2),
)
@settings(max_examples=60, deadline=None)
def test_first_derivative_bound(k, U, log_beta):
    rng = arch.RangeSpec(k=k, U=U)
    beta = 10.0**log_beta
    if beta * rng.t_interval[1] > arch.OSCILLATION_BUDGET:
        return
    v = arch.v_integral(rng, beta)
    cap = arch.stationary_bound(rng, beta)
    assert abs(v.value) <= cap + v.abs_error + 1e-12


def test_generating_sum_counts_integers():
    r = arch.RangeSpec(k=2, U=100.0)
    gs = arch.generating_sum(r, 0.0)
    assert gs.n_terms == 100  # integers in (100, 200]
    assert gs.value == pytest.approx(100.0)


def test_generating_sum_tracks_integral():
    r = arch.RangeSpec.standard(2, 10**6)
    beta = 2.5e-7
    gs = arch.generating_sum(r, beta)
    v = arch.v_integral(r, beta)
    # boundary terms perturb the sum by O(1) against a scale-U value
    assert abs(gs.value - v.value) <= 5.0


def test_generating_sum_prime_weighted():
    r = arch.RangeSpec(k=1, U=1000.0)
    gs = arch.generating_sum(r, 0.0, prime_weighted=True)
    # sum of log p over primes in (1000, 2000] is theta(2000) - theta(1000)
    from wgsieve.arith import primes_up_to

    ps = primes_up_to(2000)
    want = float(np.sum(np.log(ps[ps > 1000].astype(float))))
    assert gs.value == pytest.approx(want, rel=1e-12)


def test_J_positive_with_enclosure():
    J = arch.singular_integral_J(10**9, 12)
    assert J.lo > 0
    assert J.lo <= J.point <= J.hi


def test_J_grid_refinement_within_width():
    coarse = arch.singular_integral_J(10**8, 18, bins=2048)
    fine = arch.singular_integral_J(10**8, 18, bins=4096)
    assert abs(fine.point - coarse.point) <= max(coarse.width, 1e-12 * coarse.point)


def test_J_input_validation():
    with pytest.raises(ValueError):
        arch.singular_integral_J(10**4, 12)
    with pytest.raises(ValueError):
        arch.singular_integral_J(10**9, 12, bins=100)
    with pytest.raises(ValueError):
        arch.singular_integral_J(10**9, 40)


def test_exponent_fit_needs_enough_points():
    with pytest.raises(ValueError):
        arch.exponent_fit(12, [10**6, 10**8, 10**10])
    with pytest.raises(ValueError):
        arch.exponent_fit(12, [10**5, 10**6, 10**7, 10**8, 10**9])


def test_exponent_fit_slope():
    Ns = np.geomspace(10**6, 10**12, 6)
    slope, rms = arch.exponent_fit(24, Ns)
    assert slope == pytest.approx(35 / 36 + 1 / 24, abs=0.02)
    assert rms < 0.05
