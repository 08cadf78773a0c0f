#include "hdis/covariance.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hdis {

namespace {

// Largest deviation from orthonormality: max over |norm_i - 1| and |d_i.d_j|.
double orthonormality_defect(const std::vector<Vec>& dirs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    worst = std::max(worst, std::abs(norm2(dirs[i]) - 1.0));
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      worst = std::max(worst, std::abs(dot(dirs[i], dirs[j])));
    }
  }
  return worst;
}

}  // namespace

std::vector<Vec> orthonormalize_directions(std::vector<Vec> dirs,
                                           std::size_t n, double accept_tol,
                                           double repair_tol) {
  for (const Vec& d : dirs) {
    if (d.size() != n) {
      throw std::invalid_argument("direction dimension mismatch");
    }
  }
  if (dirs.size() > n) {
    throw std::invalid_argument("more directions than the ambient dimension");
  }
  const double defect = orthonormality_defect(dirs);
  if (defect <= accept_tol) return dirs;
  if (defect > repair_tol) {
    std::ostringstream msg;
    msg << "directions not orthonormal: defect " << defect
        << " exceeds repair tolerance " << repair_tol;
    throw std::invalid_argument(msg.str());
  }
  // modified Gram-Schmidt, two passes
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        add_scaled(dirs[i], -dot(dirs[j], dirs[i]), dirs[j]);
      }
      const double nn = norm2(dirs[i]);
      if (nn < 0.5) {
        throw std::invalid_argument(
            "directions nearly dependent, cannot re-orthonormalize");
      }
      for (double& x : dirs[i]) x /= nn;
    }
  }
  return dirs;
}

LowRankCovariance::LowRankCovariance(std::size_t n, std::vector<Vec> directions,
                                     std::vector<double> variances)
    : n_(n) {
  if (n == 0) throw std::invalid_argument("LowRankCovariance: n must be >= 1");
  if (directions.size() != variances.size()) {
    throw std::invalid_argument(
        "LowRankCovariance: directions/variances size mismatch");
  }
  for (std::size_t i = 0; i < variances.size(); ++i) {
    if (!(variances[i] > 1e-12)) {
      std::ostringstream msg;
      msg << "LowRankCovariance: variance " << variances[i] << " at index "
          << i << " is degenerate (must exceed 1e-12)";
      throw std::invalid_argument(msg.str());
    }
  }
  directions_ = orthonormalize_directions(std::move(directions), n);
  variances_ = std::move(variances);
}

LowRankCovariance LowRankCovariance::identity(std::size_t n) {
  return LowRankCovariance(n, {}, {});
}

DenseSym lowrank_to_dense(const LowRankCovariance& c) {
  const std::size_t n = c.dim();
  DenseSym m = DenseSym::identity(n);
  for (std::size_t r = 0; r < c.rank(); ++r) {
    const Vec& d = c.directions()[r];
    const double w = c.variances()[r] - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        m.set(i, j, m(i, j) + w * d[i] * d[j]);
      }
    }
  }
  return m;
}

double lowrank_logdet(const LowRankCovariance& c) {
  double s = 0.0;
  for (double v : c.variances()) s += std::log(v);
  return s;
}

double lowrank_inv_quad(const LowRankCovariance& c, const Vec& y) {
  if (y.size() != c.dim()) {
    throw std::invalid_argument("lowrank_inv_quad: size mismatch");
  }
  double s = dot(y, y);
  for (std::size_t r = 0; r < c.rank(); ++r) {
    const double p = dot(c.directions()[r], y);
    s += (1.0 / c.variances()[r] - 1.0) * p * p;
  }
  return s;
}

Vec lowrank_sqrt_apply(const LowRankCovariance& c, const Vec& z) {
  if (z.size() != c.dim()) {
    throw std::invalid_argument("lowrank_sqrt_apply: size mismatch");
  }
  Vec x = z;
  for (std::size_t r = 0; r < c.rank(); ++r) {
    const Vec& d = c.directions()[r];
    add_scaled(x, (std::sqrt(c.variances()[r]) - 1.0) * dot(d, z), d);
  }
  return x;
}

}  // namespace hdis
