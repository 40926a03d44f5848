"""Independent brute-force and quadrature oracles."""
import math

import numpy as np
import pytest

from wgsieve import local, oracles


def test_brute_matches_engine_spot():
    for p in (3, 5, 7, 11, 13):
        for b in (12, 35):
            for n in range(p):
                assert oracles.brute_congruence_count(p, n, b, "L") == local.count_L(p, n, b)
                assert oracles.brute_congruence_count(p, n, b, "K") == local.count_K(p, n, b)
                assert oracles.brute_congruence_count(p, n, b, "Lstar") == local.count_Lstar(p, n, b)


def test_brute_rejects_large_modulus():
    from wgsieve import ResourceLimitError

    with pytest.raises(ResourceLimitError):
        oracles.brute_congruence_count(17, 0, 12, "L")


def test_orthogonality_residual_small():
    for q, N in ((7, 3), (30, 11), (105, 23), (120, 7)):
        assert oracles.orthogonality_check(q, N, 12) <= 1e-6 * q**6


def test_simpson_oracle_value():
    # frozen high-precision value of the depth-1 integral at T = 35
    assert oracles.simpson_log_integral(35.0) == pytest.approx(
        5.5265610298873652235, abs=1e-12
    )


def test_tensor_oracle_values():
    from wgsieve import buchstab

    assert oracles.tensor_quadrature_c_r(4, 10.0) == pytest.approx(
        0.76961234856301571735, rel=1e-8
    )
    rec = buchstab.iterated_integral(5, 20.0, tol=1e-10)
    assert oracles.tensor_quadrature_c_r(5, 20.0) == pytest.approx(rec.point, rel=1e-5)


def test_nr_prime_sum_frozen():
    s, pred, ratio = oracles.nr_prime_sum(3, 10**7, 30)
    assert s == pytest.approx(0.022665850685, rel=1e-9)
    assert pred == pytest.approx(0.0207844714729, rel=1e-9)
    assert ratio == pytest.approx(1.0905, abs=2e-4)
    s, pred, ratio = oracles.nr_prime_sum(4, 10**8, 25)
    assert s == pytest.approx(0.003146002973, rel=1e-9)
    assert ratio == pytest.approx(1.0777, abs=2e-4)


def test_nr_prime_sum_empty_window():
    s, pred, ratio = oracles.nr_prime_sum(6, 10**6, 30)
    assert s == 0.0 and math.isnan(ratio)


def test_cube_meanvalue_count():
    # number of (x1,x2,y1,y2) with x1^3+x2^3 = y1^3+y2^3 in the two dyadic ranges
    assert oracles.cube_meanvalue_count(10**6) == 14747
    r1, r2 = oracles.cube_ranges(10**6)
    assert (r1, r2) == (33, 15)
    # diagonal solutions alone: r1 * (2 r2^2 - r2)
    assert 14747 >= r1 * (2 * r2**2 - r2)


def test_mc_matches_grid_integral():
    from wgsieve import archimedean

    J = archimedean.singular_integral_J(10**9, 12)
    mc = oracles.mc_singular_integral(10**9, 12, samples=2 * 10**6, seed=3)
    assert mc == pytest.approx(J.point, rel=0.05)


def test_report_shape_and_suite_names():
    reps = oracles.run_suites("rosser")
    assert [r.name for r in reps] == [
        "rosser.sandwich_random",
        "rosser.fundamental_exhaustive",
    ]
    for r in reps:
        assert r.passed and r.cases > 0 and r.seconds >= 0
    with pytest.raises(ValueError):
        oracles.run_suites("nonsense")
