"""Exact local solution counts, singular series enclosures, iterated sieve
integrals, Rosser weights, and the Archimedean integral for a seven-variable
additive form with mixed power ranges."""
from .archimedean import RangeSpec, exponent_fit, generating_sum, singular_integral_J, v_integral
from .arith import ResourceLimitError, euler_phi, factorize, is_prime, moebius, primes_up_to
from .buchstab import (
    C_total,
    QuadratureError,
    SieveBudget,
    budget,
    c_r,
    iterated_integral,
    lumu_r,
    min_r,
    sieve_F,
    sieve_f,
)
from .expsums import ExpSumValue, all_residue_sums, complete_sum, gamma_cutoff, unit_sum
from .intervals import IntervalValue
from .local import LocalSolutionCounts, count_K, count_L, count_Lstar, ep_bound, local_counts
from .rosser import RosserWeightTable, direct_product, fundamental_check, lambda_weight, sifted_sum
from .series import (
    A_coeff,
    B_coeff,
    OmegaDensity,
    omega_d,
    omega_p,
    sieve_product_V,
    singular_series,
    singular_series_d,
    singular_series_many,
)

__version__ = "0.1.0"

__all__ = [
    "A_coeff",
    "B_coeff",
    "C_total",
    "ExpSumValue",
    "IntervalValue",
    "LocalSolutionCounts",
    "OmegaDensity",
    "QuadratureError",
    "RangeSpec",
    "ResourceLimitError",
    "RosserWeightTable",
    "SieveBudget",
    "all_residue_sums",
    "budget",
    "c_r",
    "complete_sum",
    "count_K",
    "count_L",
    "count_Lstar",
    "direct_product",
    "ep_bound",
    "euler_phi",
    "exponent_fit",
    "factorize",
    "fundamental_check",
    "gamma_cutoff",
    "generating_sum",
    "is_prime",
    "iterated_integral",
    "lambda_weight",
    "local_counts",
    "lumu_r",
    "min_r",
    "moebius",
    "omega_d",
    "omega_p",
    "primes_up_to",
    "sieve_F",
    "sieve_f",
    "sieve_product_V",
    "sifted_sum",
    "singular_integral_J",
    "singular_series",
    "singular_series_d",
    "singular_series_many",
    "unit_sum",
    "v_integral",
]
