#pragma once

#include <cstdint>
#include <vector>

#include "hdis/gaussian.hpp"
#include "hdis/problems.hpp"
#include "hdis/rng.hpp"

namespace hdis {

/// Replication statistics. The coefficient of variation is the root mean
/// square deviation of the estimates about the reference value E (not about
/// their own mean), divided by E.
struct RunStatistics {
  std::vector<double> estimates;
  double reference = 0.0;
  double mean = 0.0;
  double relative_bias = 0.0;
  double coefficient_of_variation = 0.0;
  double mean_partial_kl = 0.0;
  double kl_relative_error = 0.0;
};

// (1/N) sum phi(X_i) L(X_i) with X_i ~ g and L = f/g. Likelihood ratios are
// computed in log space and exponentiated per point, with no clipping.
double is_estimate(const TestProblem& problem, const GaussianLaw& g,
                   std::size_t n_samples, RandomStream& rng);

struct CrudeMcResult {
  double estimate = 0.0;
  double standard_error = 0.0;
};

// Sample mean of phi under the standard normal, with its standard error.
CrudeMcResult crude_mc_estimate(const TestProblem& problem,
                                std::uint64_t n_samples, RandomStream& rng);

RunStatistics run_statistics(std::vector<double> estimates, double reference,
                             const std::vector<double>& kl_values,
                             double kl_star);

}  // namespace hdis
