"""Gaussian importance sampling with low-rank projection of the auxiliary
covariance.

The heavy lifting lives in the compiled extension ``hdis._hdis``; this package
re-exports its public surface.
"""

from ._hdis import (
    GaussianLaw,
    GStarSample,
    LowRankCovariance,
    TestProblem,
    build_projected_cov,
    choose_k,
    crude_mc_estimate,
    eigendecompose,
    ell,
    ell_order_values,
    empirical_cov,
    empirical_mean,
    gamma66_cdf,
    gamma66_quantile,
    is_estimate,
    kl_relative_error,
    make_problem,
    normal_cdf,
    normal_quantile,
    optimal_projection,
    partial_kl,
    partial_kl_lowrank,
    problem_names,
    rejection_sample_gstar,
    run_dimension_sweep_csv,
    run_experiment_csv,
    sir_sample_gstar,
)

__all__ = [
    "GaussianLaw",
    "GStarSample",
    "LowRankCovariance",
    "TestProblem",
    "build_projected_cov",
    "choose_k",
    "crude_mc_estimate",
    "eigendecompose",
    "ell",
    "ell_order_values",
    "empirical_cov",
    "empirical_mean",
    "gamma66_cdf",
    "gamma66_quantile",
    "is_estimate",
    "kl_relative_error",
    "make_problem",
    "normal_cdf",
    "normal_quantile",
    "optimal_projection",
    "partial_kl",
    "partial_kl_lowrank",
    "problem_names",
    "rejection_sample_gstar",
    "run_dimension_sweep_csv",
    "run_experiment_csv",
    "sir_sample_gstar",
]

__version__ = "0.1.0"
