#include "hdis/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hdis/projection.hpp"

namespace hdis {

double is_estimate(const TestProblem& problem, const GaussianLaw& g,
                   std::size_t n_samples, RandomStream& rng) {
  if (problem.dim != g.dim()) {
    throw std::invalid_argument("is_estimate: problem/law dimension mismatch");
  }
  if (n_samples == 0) throw std::invalid_argument("is_estimate: N == 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Vec x = g.sample(rng);
    const double p = problem.phi(x);
    if (p != 0.0) acc += p * std::exp(likelihood_ratio_log(g, x));
  }
  return acc / static_cast<double>(n_samples);
}

CrudeMcResult crude_mc_estimate(const TestProblem& problem,
                                std::uint64_t n_samples, RandomStream& rng) {
  if (n_samples < 2) {
    throw std::invalid_argument("crude_mc_estimate: need at least 2 samples");
  }
  Vec x(problem.dim);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    for (double& c : x) c = rng.normal();
    const double p = problem.phi(x);
    sum += p;
    sum_sq += p * p;
  }
  const double nd = static_cast<double>(n_samples);
  const double mean = sum / nd;
  const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
  return {mean, std::sqrt(var / nd)};
}

RunStatistics run_statistics(std::vector<double> estimates, double reference,
                             const std::vector<double>& kl_values,
                             double kl_star) {
  if (estimates.empty() || kl_values.empty()) {
    throw std::invalid_argument("run_statistics: empty input");
  }
  if (!(reference > 0.0)) {
    throw std::invalid_argument("run_statistics: reference must be > 0");
  }

  RunStatistics st;
  st.reference = reference;
  const double r = static_cast<double>(estimates.size());
  double sum = 0.0;
  double sq_dev = 0.0;  // deviations about the reference, not the mean
  for (double e : estimates) {
    sum += e;
    sq_dev += (e - reference) * (e - reference);
  }
  st.mean = sum / r;
  st.relative_bias = (st.mean - reference) / reference;
  st.coefficient_of_variation = std::sqrt(sq_dev / r) / reference;

  double kl_sum = 0.0;
  for (double d : kl_values) kl_sum += d;
  st.mean_partial_kl = kl_sum / static_cast<double>(kl_values.size());
  st.kl_relative_error = kl_relative_error(st.mean_partial_kl, kl_star);
  st.estimates = std::move(estimates);
  return st;
}

}  // namespace hdis
