#include "hdis/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hdis {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)
}

GaussianLaw::GaussianLaw(Vec mean, const DenseSym& cov)
    : mean_(std::move(mean)) {
  if (mean_.size() != cov.dim()) {
    throw std::invalid_argument("GaussianLaw: mean/cov dimension mismatch");
  }
  Spectrum spec = sym_eigendecompose(cov);
  const std::size_t n = cov.dim();
  eig_vals_.resize(n);
  eig_sqrt_.resize(n);
  eig_dirs_.resize(n);
  log_det_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = spec.pairs[i].value;
    if (!(lam > 1e-12)) {
      std::ostringstream msg;
      msg << "GaussianLaw: dense covariance not positive-definite (eigenvalue "
          << lam << ")";
      throw std::invalid_argument(msg.str());
    }
    eig_vals_[i] = lam;
    eig_sqrt_[i] = std::sqrt(lam);
    eig_dirs_[i] = std::move(spec.pairs[i].direction);
    log_det_ += std::log(lam);
  }
}

GaussianLaw::GaussianLaw(Vec mean, LowRankCovariance cov)
    : mean_(std::move(mean)), lowrank_(std::move(cov)) {
  if (mean_.size() != lowrank_->dim()) {
    throw std::invalid_argument("GaussianLaw: mean/cov dimension mismatch");
  }
  log_det_ = lowrank_logdet(*lowrank_);
}

double GaussianLaw::inv_quad_centered(const Vec& y) const {
  if (lowrank_) return lowrank_inv_quad(*lowrank_, y);
  double s = 0.0;
  for (std::size_t i = 0; i < eig_dirs_.size(); ++i) {
    const double p = dot(eig_dirs_[i], y);
    s += p * p / eig_vals_[i];
  }
  return s;
}

double GaussianLaw::log_density(const Vec& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("log_density: size mismatch");
  }
  Vec y(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= mean_[i];
  const double n = static_cast<double>(dim());
  return -0.5 * n * kLog2Pi - 0.5 * log_det_ - 0.5 * inv_quad_centered(y);
}

Vec GaussianLaw::sample(RandomStream& rng) const {
  const std::size_t n = dim();
  Vec z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = rng.normal();
  if (lowrank_) {
    Vec x = lowrank_sqrt_apply(*lowrank_, z);
    for (std::size_t i = 0; i < n; ++i) x[i] += mean_[i];
    return x;
  }
  Vec x(mean_);
  for (std::size_t i = 0; i < n; ++i) {
    add_scaled(x, eig_sqrt_[i] * z[i], eig_dirs_[i]);
  }
  return x;
}

double log_density(const GaussianLaw& g, const Vec& x) {
  return g.log_density(x);
}

std::vector<Vec> sample_gaussian(const GaussianLaw& g, RandomStream& rng,
                                 std::size_t count) {
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(g.sample(rng));
  return out;
}

double likelihood_ratio_log(const GaussianLaw& g, const Vec& x) {
  if (x.size() != g.dim()) {
    throw std::invalid_argument("likelihood_ratio_log: size mismatch");
  }
  Vec y(x);
  const Vec& m = g.mean();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= m[i];
  // log f - log g; the -(n/2) log(2 pi) terms cancel
  return 0.5 * (g.log_det() + g.inv_quad_centered(y) - dot(x, x));
}

}  // namespace hdis
