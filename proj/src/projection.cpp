#include "hdis/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hdis {

double ell(double x) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "ell: argument " << x << " outside the domain (0, inf)";
    throw std::domain_error(msg.str());
  }
  return std::log(x) - x + 1.0;
}

std::vector<double> EllOrderedSpectrum::values() const {
  std::vector<double> v(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) v[i] = pairs[i].value;
  return v;
}

EllOrderedSpectrum ell_order(const Spectrum& s) {
  const std::size_t n = s.dim();
  std::vector<double> lv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = s.pairs[i].value;
    if (!(lam > 1e-12)) {
      std::ostringstream msg;
      msg << "ell_order: eigenvalue " << lam << " at index " << i
          << " is not positive";
      throw std::domain_error(msg.str());
    }
    lv[i] = ell(lam);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (lv[a] != lv[b]) return lv[a] < lv[b];
                     // ties: smaller eigenvalue first, then original index
                     if (s.pairs[a].value != s.pairs[b].value) {
                       return s.pairs[a].value < s.pairs[b].value;
                     }
                     return a < b;
                   });
  EllOrderedSpectrum out;
  out.pairs.reserve(n);
  for (std::size_t idx : order) out.pairs.push_back(s.pairs[idx]);
  return out;
}

LowRankCovariance optimal_projection(const EllOrderedSpectrum& s,
                                     std::size_t k) {
  if (k > s.dim()) {
    std::ostringstream msg;
    msg << "optimal_projection: k = " << k << " out of range [0, " << s.dim()
        << "]";
    throw std::invalid_argument(msg.str());
  }
  std::vector<Vec> dirs;
  std::vector<double> vars;
  dirs.reserve(k);
  vars.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    dirs.push_back(s.pairs[i].direction);
    vars.push_back(s.pairs[i].value);
  }
  return LowRankCovariance(s.dim(), std::move(dirs), std::move(vars));
}

std::vector<double> ell_increments(const std::vector<double>& ordered_values) {
  if (ordered_values.size() < 2) {
    throw std::invalid_argument("ell_increments: need at least two values");
  }
  std::vector<double> inc(ordered_values.size() - 1);
  for (std::size_t i = 0; i + 1 < ordered_values.size(); ++i) {
    inc[i] = ell(ordered_values[i + 1]) - ell(ordered_values[i]);
  }
  return inc;
}

std::size_t choose_k(const std::vector<double>& ell_ordered_values) {
  const std::vector<double> inc = ell_increments(ell_ordered_values);
  std::size_t best = 0;
  for (std::size_t i = 1; i < inc.size(); ++i) {
    if (inc[i] > inc[best]) best = i;  // strict: ties keep the smallest index
  }
  return best + 1;
}

std::size_t choose_k(const EllOrderedSpectrum& s) {
  return choose_k(s.values());
}

double psi(const DenseSym& sigma_star, const Vec& x) {
  const double nn = dot(x, x);
  if (!(nn > 0.0)) throw std::invalid_argument("psi: zero vector");
  return sigma_star.quad(x) / nn;
}

double partial_kl_dense(const DenseSym& sigma, const DenseSym& sigma_star) {
  if (sigma.dim() != sigma_star.dim()) {
    throw std::invalid_argument("partial_kl_dense: dimension mismatch");
  }
  const Spectrum spec = sym_eigendecompose(sigma);
  double log_det = 0.0;
  double trace_term = 0.0;
  for (const Eigenpair& ep : spec.pairs) {
    if (!(ep.value > 1e-12)) {
      std::ostringstream msg;
      msg << "partial_kl_dense: sigma not positive-definite (eigenvalue "
          << ep.value << ")";
      throw std::invalid_argument(msg.str());
    }
    log_det += std::log(ep.value);
    trace_term += sigma_star.quad(ep.direction) / ep.value;
  }
  return log_det + trace_term;
}

double partial_kl_lowrank(const LowRankCovariance& c,
                          const DenseSym& sigma_star) {
  if (c.dim() != sigma_star.dim()) {
    throw std::invalid_argument("partial_kl_lowrank: dimension mismatch");
  }
  double s = sigma_star.trace();
  for (std::size_t i = 0; i < c.rank(); ++i) {
    const double v = c.variances()[i];
    s += std::log(v) + (1.0 / v - 1.0) * psi(sigma_star, c.directions()[i]);
  }
  return s;
}

double kl_relative_error(double d_sigma, double d_star) {
  if (!(d_star > 0.0)) {
    throw std::invalid_argument("kl_relative_error: reference must be > 0");
  }
  return (d_sigma - d_star) / d_star;
}

}  // namespace hdis
