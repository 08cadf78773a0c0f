"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import hdis


def test_ell():
    assert hdis.ell(1.0) == 0.0
    assert hdis.ell(math.e) == pytest.approx(2.0 - math.e, abs=1e-14)
    with pytest.raises(Exception):
        hdis.ell(0.0)


def test_special_functions():
    assert hdis.normal_cdf(0.0) == 0.5
    assert hdis.normal_cdf(-3.0) == pytest.approx(1.3498980316300933e-3, rel=1e-12)
    assert hdis.normal_quantile(hdis.normal_cdf(-2.5)) == pytest.approx(-2.5, abs=1e-10)
    assert hdis.gamma66_cdf(1.0) == pytest.approx(0.5543203586353886, abs=1e-12)
    assert hdis.gamma66_quantile(hdis.gamma66_cdf(0.7)) == pytest.approx(0.7, abs=1e-9)


def test_eigendecompose_and_ell_order():
    a = np.diag([0.278, 0.009, 0.0075, 1.0, 1.0])
    values, vectors = hdis.eigendecompose(a)
    assert values == pytest.approx([1.0, 1.0, 0.278, 0.009, 0.0075], rel=1e-12)
    assert np.allclose(vectors @ vectors.T, np.eye(5), atol=1e-10)

    ordered, _ = hdis.ell_order_values(a)
    assert ordered[:3] == pytest.approx([0.0075, 0.009, 0.278], rel=1e-12)
    assert hdis.choose_k(ordered) == 2


def test_projection_against_numpy():
    rng = np.random.default_rng(5)
    b = rng.normal(size=(6, 6))
    sigma_star = b @ b.T + 0.5 * np.eye(6)
    proj = hdis.optimal_projection(sigma_star, k=2)
    assert proj.rank == 2
    dense = proj.to_dense()
    # identity plus a rank-2 symmetric update
    eigs = np.linalg.eigvalsh(dense - np.eye(6))
    assert (np.abs(eigs) > 1e-9).sum() == 2
    # the projection never beats the full matrix in partial KL
    d_star = hdis.partial_kl(sigma_star, sigma_star)
    d_proj = hdis.partial_kl_lowrank(proj, sigma_star)
    assert d_proj >= d_star - 1e-9
    assert hdis.kl_relative_error(d_proj, d_star) >= -1e-12


def test_problem_registry_and_analytics():
    assert set(hdis.problem_names()) == {"sum", "parabolic", "portfolio", "asian"}
    p = hdis.make_problem("sum", 40)
    assert p.dim == 40
    assert p.is_indicator
    assert p.analytic_integral == pytest.approx(1.3498980316300933e-3, rel=1e-12)
    cov = p.analytic_cov
    assert 40 + cov.logdet() == pytest.approx(37.35, abs=0.01)

    asian = hdis.make_problem("asian", 16)
    assert asian.phi([0.0] * 16) == 0.0
    assert not asian.is_indicator


def test_sampling_and_estimation_pipeline():
    p = hdis.make_problem("sum", 10)
    sample = hdis.rejection_sample_gstar(p, m=300, seed=11)
    assert sample.points.shape == (300, 10)
    assert sample.proposals_used > 300
    assert sum(sample.weights) == pytest.approx(1.0, abs=1e-12)

    cov_hat = hdis.empirical_cov(sample)
    m_hat = hdis.empirical_mean(sample)
    proj = hdis.optimal_projection(cov_hat)  # rank from the largest ell-gap
    assert proj.rank == 1

    law = hdis.GaussianLaw(m_hat, proj)
    est = hdis.is_estimate(p, law, n_samples=4000, seed=12)
    assert est == pytest.approx(p.analytic_integral, rel=0.25)

    crude, se = hdis.crude_mc_estimate(p, n_samples=2000000, seed=13)
    assert abs(crude - p.analytic_integral) < 5 * se


def test_gaussian_law_identities():
    law = hdis.GaussianLaw([0.0], hdis.LowRankCovariance(1, [[1.0]], [4.0]))
    assert law.likelihood_ratio_log([0.0]) == pytest.approx(math.log(2.0), abs=1e-13)
    draws = law.sample(count=5, seed=3)
    again = law.sample(count=5, seed=3)
    assert np.array_equal(draws, again)


def test_experiment_csv_determinism():
    kwargs = dict(
        problem="sum",
        dims=[8],
        strategies=["opt", "proj_m_hat"],
        M=60,
        N=200,
        reps=3,
        seed=99,
    )
    a = hdis.run_experiment_csv(**kwargs)
    b = hdis.run_experiment_csv(**kwargs)
    assert a == b
    header = a.splitlines()[0]
    assert header.startswith("name,dim,strategy,d_prime_mean")
    assert len(a.splitlines()) == 3
