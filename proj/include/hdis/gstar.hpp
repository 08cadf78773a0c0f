#pragma once

#include <cstdint>
#include <vector>

#include "hdis/covariance.hpp"
#include "hdis/linalg.hpp"
#include "hdis/problems.hpp"
#include "hdis/rng.hpp"

namespace hdis {

/// A (possibly weighted) sample from the zero-variance density g* = phi f / E.
/// Exact samplers emit uniform weights 1/M. proposals_used counts the phi
/// evaluations spent producing the sample.
struct GStarSample {
  std::vector<Vec> points;
  std::vector<double> weights;  // nonnegative, sum to 1
  std::uint64_t proposals_used = 0;
  // Effective sample size (sum w_i^2)^{-1} of the weighted pool behind a
  // resampled output; equals size() for exact samplers.
  double pool_ess = 0.0;

  std::size_t size() const { return points.size(); }
};

// Exact sampler for indicator-valued phi: standard normal proposals kept
// while phi = 1 until m acceptances. Throws std::runtime_error (reporting the
// acceptance rate so far) if the proposal budget runs out first.
GStarSample rejection_sample_gstar(const TestProblem& problem, std::size_t m,
                                   RandomStream& rng,
                                   std::uint64_t budget = 1000000000ull);

// Sampling importance resampling for general phi >= 0: a standard normal pool
// weighted by phi, then systematic resampling of m points. Requires
// pool >= 10 m; throws if phi vanishes on the whole pool.
GStarSample sir_sample_gstar(const TestProblem& problem, std::size_t m,
                             std::size_t pool, RandomStream& rng);

Vec empirical_mean(const GStarSample& s);

// Weighted centered second moment; uniform weights give the plain 1/M
// normalization (not 1/(M-1)). Requires at least two points.
DenseSym empirical_cov(const GStarSample& s);

// Projected covariance I + sum_i (v_i - 1) d_i d_i^T with v_i = d_i^T
// sigma_hat d_i. Directions are re-orthonormalized under the covariance
// construction policy (violations up to 1e-6 repaired); a variance at or
// below 1e-12 is an error.
LowRankCovariance build_projected_cov(const DenseSym& sigma_hat,
                                      const std::vector<Vec>& directions);

}  // namespace hdis
