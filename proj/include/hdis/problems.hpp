#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hdis/covariance.hpp"
#include "hdis/linalg.hpp"

namespace hdis {

enum class PhiKind { Indicator, General };

/// Closed-form reference data: the integral E, the mean m* and covariance
/// Sigma* of the zero-variance density phi f / E.
struct AnalyticRecord {
  double integral = 0.0;
  Vec m_star;
  LowRankCovariance sigma_star = LowRankCovariance::identity(1);
};

/// A non-negative integrand phi: R^dim -> R+ under the standard normal
/// reference density. phi is pure and reentrant.
struct TestProblem {
  std::string name;
  std::size_t dim = 0;
  PhiKind kind = PhiKind::Indicator;
  std::function<double(const Vec&)> phi;
  std::optional<AnalyticRecord> analytic;
};

// 1{ sum_j x_j - 3 sqrt(n) >= 0 }. Exact record: E is the standard normal
// upper tail at 3; m* = alpha 1, Sigma* = (v-1) 1 1^T + I with (alpha, v) the
// conditional mean and variance of a standard normal given exceedance of 3.
TestProblem sum_limit_state(std::size_t n);

// 1{ x1 - 25 x2^2 - 30 x3^2 - 1 >= 0 }, n >= 3. Record computed by a
// deterministic two-dimensional quadrature: m* = alpha e1, Sigma* diagonal
// with entries (lambda1, lambda2, lambda3, 1, ..., 1).
TestProblem parabolic_limit_state(std::size_t n);

// Conditional moments behind the parabolic record, exposed for verification.
struct ParabolicMoments {
  double integral = 0.0;  // E
  double alpha = 0.0;     // conditional mean of x1
  double lambda1 = 0.0;   // conditional variances of x1, x2, x3
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};
const ParabolicMoments& parabolic_conditional_moments();

// Large portfolio losses with n obligors; ambient dimension n + 2 with
// X = (U, mu~, eta~_1..eta~_n). The event is a strict excess: the loss count
// must exceed 0.25 n.
TestProblem portfolio_loss(std::size_t n_obligors);

// Discretized average-price call payoff, n time steps; general (unbounded)
// integrand with S0=50, r=0.05, T=0.5, sigma=0.1, K=55.
TestProblem asian_payoff(std::size_t n_steps);

// Registry: "sum", "parabolic", "portfolio", "asian". For "portfolio" the
// size parameter is the obligor count (ambient dimension is n + 2).
TestProblem make_problem(const std::string& name, std::size_t n);
std::vector<std::string> problem_names();

}  // namespace hdis
