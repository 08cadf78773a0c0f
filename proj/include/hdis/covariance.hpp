#pragma once

#include <cstddef>
#include <vector>

#include "hdis/linalg.hpp"

namespace hdis {

/// Identity-plus-low-rank covariance
///
///   Sigma = I_n + sum_i (v_i - 1) d_i d_i^T
///
/// with orthonormal directions d_1..d_k and variances v_i > 0. k = 0 is the
/// identity. Construction re-orthonormalizes inputs whose pairwise dot
/// products or norm deviations lie in (1e-10, 1e-6] and rejects anything
/// worse; variances at or below 1e-12 are rejected rather than clamped.
class LowRankCovariance {
 public:
  LowRankCovariance(std::size_t n, std::vector<Vec> directions,
                    std::vector<double> variances);
  static LowRankCovariance identity(std::size_t n);

  std::size_t dim() const { return n_; }
  std::size_t rank() const { return directions_.size(); }
  const std::vector<Vec>& directions() const { return directions_; }
  const std::vector<double>& variances() const { return variances_; }

 private:
  std::size_t n_;
  std::vector<Vec> directions_;
  std::vector<double> variances_;
};

// Gram-Schmidt repair used by the constructor, exposed for callers that need
// cleaned directions before deriving variances from them. accept_tol passes
// inputs through untouched; repair_tol is the largest violation repaired.
std::vector<Vec> orthonormalize_directions(std::vector<Vec> dirs,
                                           std::size_t n,
                                           double accept_tol = 1e-10,
                                           double repair_tol = 1e-6);

DenseSym lowrank_to_dense(const LowRankCovariance& c);

// sum_i log v_i
double lowrank_logdet(const LowRankCovariance& c);

// y^T Sigma^{-1} y = y^T y + sum_i (1/v_i - 1) (d_i^T y)^2, O(nk)
double lowrank_inv_quad(const LowRankCovariance& c, const Vec& y);

// (I + sum_i (sqrt(v_i) - 1) d_i d_i^T) z, the exact square root applied to z
Vec lowrank_sqrt_apply(const LowRankCovariance& c, const Vec& z);

}  // namespace hdis
