#pragma once

#include <cstddef>
#include <vector>

#include "hdis/covariance.hpp"
#include "hdis/linalg.hpp"

namespace hdis {

// ell(x) = log(x) - x + 1 on (0, inf); <= 0 everywhere, = 0 only at x = 1.
double ell(double x);

/// Eigenpairs sorted so that ell(lambda_1) <= ... <= ell(lambda_n). Extreme
/// (very small or very large) eigenvalues come first.
struct EllOrderedSpectrum {
  std::vector<Eigenpair> pairs;
  std::size_t dim() const { return pairs.size(); }
  std::vector<double> values() const;
};

// Stable sort by ell(lambda) ascending; ties broken by smaller eigenvalue,
// then by original position. Eigenvalues at or below 1e-12 raise
// std::domain_error naming the offending index.
EllOrderedSpectrum ell_order(const Spectrum& s);

// The best identity-plus-rank-k covariance: directions d_1..d_k and variances
// lambda_1..lambda_k taken from the first k ell-ordered eigenpairs.
LowRankCovariance optimal_projection(const EllOrderedSpectrum& s,
                                     std::size_t k);

// Increments ell(lambda_{i+1}) - ell(lambda_i) of an ell-ordered value
// sequence; all nonnegative.
std::vector<double> ell_increments(const std::vector<double>& ordered_values);

// Number of directions to keep: the index of the largest increment in the
// ell-value sequence, ties resolved to the smallest index. Always in
// [1, n-1]; requires n >= 2.
std::size_t choose_k(const std::vector<double>& ell_ordered_values);
std::size_t choose_k(const EllOrderedSpectrum& s);

// psi(x) = x^T S x / ||x||^2
double psi(const DenseSym& sigma_star, const Vec& x);

// Partial KL divergence D'(Sigma) = log det Sigma + tr(Sigma* Sigma^{-1}),
// computed through the spectral decomposition of Sigma. This is the
// Sigma-dependent part of the KL divergence only (no 1/2 factor, no constant
// terms); it is not the full divergence.
double partial_kl_dense(const DenseSym& sigma, const DenseSym& sigma_star);

// Closed form for Sigma in L_{n,k}:
//   sum_i [log v_i + (1/v_i - 1) psi(d_i)] + tr(Sigma*),  cost O(n^2 k).
double partial_kl_lowrank(const LowRankCovariance& c,
                          const DenseSym& sigma_star);

// (d_sigma - d_star) / d_star; requires d_star > 0
double kl_relative_error(double d_sigma, double d_star);

}  // namespace hdis
