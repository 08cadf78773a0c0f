#include "hdis/gstar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hdis {

GStarSample rejection_sample_gstar(const TestProblem& problem, std::size_t m,
                                   RandomStream& rng, std::uint64_t budget) {
  if (problem.kind != PhiKind::Indicator) {
    throw std::invalid_argument(
        "rejection_sample_gstar: integrand must be indicator-valued");
  }
  if (m == 0) throw std::invalid_argument("rejection_sample_gstar: m == 0");

  GStarSample out;
  out.points.reserve(m);
  Vec x(problem.dim);
  while (out.points.size() < m) {
    if (out.proposals_used >= budget) {
      std::ostringstream msg;
      msg << "rejection_sample_gstar: proposal budget " << budget
          << " exhausted with " << out.points.size() << "/" << m
          << " acceptances (acceptance rate "
          << static_cast<double>(out.points.size()) /
                 static_cast<double>(out.proposals_used)
          << ")";
      throw std::runtime_error(msg.str());
    }
    for (double& c : x) c = rng.normal();
    ++out.proposals_used;
    if (problem.phi(x) != 0.0) out.points.push_back(x);
  }
  out.weights.assign(m, 1.0 / static_cast<double>(m));
  out.pool_ess = static_cast<double>(m);
  return out;
}

GStarSample sir_sample_gstar(const TestProblem& problem, std::size_t m,
                             std::size_t pool, RandomStream& rng) {
  if (m == 0) throw std::invalid_argument("sir_sample_gstar: m == 0");
  if (pool < 10 * m) {
    throw std::invalid_argument(
        "sir_sample_gstar: pool must be at least 10x the target count");
  }

  std::vector<Vec> points(pool, Vec(problem.dim));
  std::vector<double> w(pool);
  double total = 0.0;
  for (std::size_t i = 0; i < pool; ++i) {
    for (double& c : points[i]) c = rng.normal();
    w[i] = problem.phi(points[i]);
    total += w[i];
  }
  if (!(total > 0.0)) {
    throw std::runtime_error("sir_sample_gstar: integrand vanished on pool");
  }
  double ess_denom = 0.0;
  for (double& wi : w) {
    wi /= total;
    ess_denom += wi * wi;
  }

  // systematic resampling
  GStarSample out;
  out.points.reserve(m);
  const double step = 1.0 / static_cast<double>(m);
  const double u0 = rng.uniform01() * step;
  double cum = w[0];
  std::size_t i = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double target = u0 + static_cast<double>(j) * step;
    while (cum < target && i + 1 < pool) {
      ++i;
      cum += w[i];
    }
    out.points.push_back(points[i]);
  }
  out.weights.assign(m, step);
  out.proposals_used = pool;
  out.pool_ess = 1.0 / ess_denom;
  return out;
}

Vec empirical_mean(const GStarSample& s) {
  if (s.points.empty()) throw std::invalid_argument("empirical_mean: empty");
  Vec mean(s.points.front().size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    add_scaled(mean, s.weights[i], s.points[i]);
  }
  return mean;
}

DenseSym empirical_cov(const GStarSample& s) {
  if (s.size() < 2) {
    throw std::invalid_argument("empirical_cov: need at least two points");
  }
  const std::size_t n = s.points.front().size();
  const Vec mean = empirical_mean(s);
  std::vector<double> acc(n * n, 0.0);
  Vec y(n);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Vec& x = s.points[k];
    const double wk = s.weights[k];
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - mean[i];
    for (std::size_t i = 0; i < n; ++i) {
      const double wyi = wk * y[i];
      double* row = acc.data() + i * n;
      for (std::size_t j = i; j < n; ++j) row[j] += wyi * y[j];
    }
  }
  DenseSym cov(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) cov.set(i, j, acc[i * n + j]);
  }
  return cov;
}

LowRankCovariance build_projected_cov(const DenseSym& sigma_hat,
                                      const std::vector<Vec>& directions) {
  std::vector<Vec> dirs =
      orthonormalize_directions(directions, sigma_hat.dim());
  std::vector<double> vars(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    vars[i] = sigma_hat.quad(dirs[i]);
    if (!(vars[i] > 1e-12)) {
      std::ostringstream msg;
      msg << "build_projected_cov: degenerate estimated variance " << vars[i]
          << " in direction " << i;
      throw std::runtime_error(msg.str());
    }
  }
  return LowRankCovariance(sigma_hat.dim(), std::move(dirs), std::move(vars));
}

}  // namespace hdis
