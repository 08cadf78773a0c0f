#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hdis/covariance.hpp"
#include "hdis/linalg.hpp"
#include "hdis/rng.hpp"

namespace hdis {

/// Gaussian law with either a dense SPD covariance or an identity-plus-low-rank
/// covariance. A dense covariance is eigendecomposed at construction and
/// rejected if any eigenvalue is at or below 1e-12. Immutable once built.
class GaussianLaw {
 public:
  GaussianLaw(Vec mean, const DenseSym& cov);
  GaussianLaw(Vec mean, LowRankCovariance cov);

  std::size_t dim() const { return mean_.size(); }
  const Vec& mean() const { return mean_; }
  bool is_lowrank() const { return lowrank_.has_value(); }
  const LowRankCovariance& lowrank() const { return *lowrank_; }

  double log_det() const { return log_det_; }
  // (y)^T Sigma^{-1} (y) for an already centered y
  double inv_quad_centered(const Vec& y) const;

  double log_density(const Vec& x) const;
  // One draw consumes exactly dim() normals from the stream.
  Vec sample(RandomStream& rng) const;

 private:
  Vec mean_;
  std::optional<LowRankCovariance> lowrank_;
  std::vector<Vec> eig_dirs_;  // dense factorization, unit eigenvectors
  Vec eig_vals_;
  Vec eig_sqrt_;
  double log_det_ = 0.0;
};

double log_density(const GaussianLaw& g, const Vec& x);

std::vector<Vec> sample_gaussian(const GaussianLaw& g, RandomStream& rng,
                                 std::size_t count);

// log f(x) - log g(x) with f the standard normal in dim(g); the shared
// -(n/2) log(2 pi) terms cancel algebraically.
double likelihood_ratio_log(const GaussianLaw& g, const Vec& x);

}  // namespace hdis
