#include "hdis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hdis {

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: size mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec normalized(const Vec& a) {
  const double n = norm2(a);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("normalized: zero or non-finite vector");
  }
  Vec out(a);
  for (double& x : out) x /= n;
  return out;
}

void add_scaled(Vec& y, double s, const Vec& x) {
  if (y.size() != x.size()) {
    throw std::invalid_argument("add_scaled: size mismatch");
  }
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

DenseSym::DenseSym(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n == 0) throw std::invalid_argument("DenseSym: dimension must be >= 1");
}

DenseSym DenseSym::identity(std::size_t n) {
  DenseSym m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

DenseSym DenseSym::from_data(std::size_t n, std::vector<double> data,
                             double sym_tol) {
  if (data.size() != n * n) {
    throw std::invalid_argument("DenseSym::from_data: bad data size");
  }
  DenseSym m(n);
  double scale = 0.0;
  for (double v : data) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double a = data[i * n + j];
      const double b = data[j * n + i];
      if (std::abs(a - b) > sym_tol * scale) {
        std::ostringstream msg;
        msg << "DenseSym::from_data: asymmetry " << std::abs(a - b) << " at ("
            << i << "," << j << ") exceeds tolerance";
        throw std::invalid_argument(msg.str());
      }
      const double v = 0.5 * (a + b);
      m.data_[i * n + j] = v;
      m.data_[j * n + i] = v;
    }
  }
  return m;
}

double DenseSym::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

double DenseSym::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Vec DenseSym::multiply(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("multiply: size mismatch");
  Vec y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + i * n_;
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

double DenseSym::quad(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("quad: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + i * n_;
    double r = 0.0;
    for (std::size_t j = 0; j < n_; ++j) r += row[j] * x[j];
    s += x[i] * r;
  }
  return s;
}

std::vector<double> Spectrum::values() const {
  std::vector<double> v(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) v[i] = pairs[i].value;
  return v;
}

namespace {

double offdiag_frobenius(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = a[i * n + j];
      s += 2.0 * v * v;
    }
  }
  return std::sqrt(s);
}

}  // namespace

Spectrum sym_eigendecompose(const DenseSym& m, int max_sweeps, double tol) {
  const std::size_t n = m.dim();
  std::vector<double> a = m.data();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double threshold = tol * std::max(1.0, m.frobenius());
  double off = offdiag_frobenius(a, n);
  int sweep = 0;
  while (off > threshold) {
    if (sweep++ >= max_sweeps) {
      std::ostringstream msg;
      msg << "sym_eigendecompose: no convergence after " << max_sweeps
          << " sweeps, off-diagonal residual " << off;
      throw std::runtime_error(msg.str());
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i != p && i != q) {
            const double aip = a[i * n + p];
            const double aiq = a[i * n + q];
            a[i * n + p] = aip - s * (aiq + tau * aip);
            a[i * n + q] = aiq + s * (aip - tau * aiq);
            a[p * n + i] = a[i * n + p];
            a[q * n + i] = a[i * n + q];
          }
          const double vip = v[i * n + p];
          const double viq = v[i * n + q];
          v[i * n + p] = vip - s * (viq + tau * vip);
          v[i * n + q] = viq + s * (vip - tau * viq);
        }
      }
    }
    off = offdiag_frobenius(a, n);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] > a[y * n + y];
  });

  Spectrum spec;
  spec.pairs.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t col = order[r];
    Eigenpair& ep = spec.pairs[r];
    ep.value = a[col * n + col];
    ep.direction.resize(n);
    for (std::size_t i = 0; i < n; ++i) ep.direction[i] = v[i * n + col];
    // deterministic sign: largest-magnitude component made positive
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(ep.direction[i]) > std::abs(ep.direction[imax])) imax = i;
    }
    if (ep.direction[imax] < 0.0) {
      for (double& x : ep.direction) x = -x;
    }
  }
  return spec;
}

std::vector<Vec> complete_orthonormal_basis(const std::vector<Vec>& dirs,
                                            std::size_t n) {
  std::vector<Vec> basis = dirs;
  std::vector<Vec> added;
  for (std::size_t j = 0; j < n && basis.size() < n; ++j) {
    Vec cand(n, 0.0);
    cand[j] = 1.0;
    for (const Vec& b : basis) add_scaled(cand, -dot(b, cand), b);
    double nn = norm2(cand);
    if (nn < 0.5) continue;
    for (double& x : cand) x /= nn;
    // second Gram-Schmidt pass tightens orthogonality
    for (const Vec& b : basis) add_scaled(cand, -dot(b, cand), b);
    nn = norm2(cand);
    for (double& x : cand) x /= nn;
    basis.push_back(cand);
    added.push_back(basis.back());
  }
  if (basis.size() != n) {
    throw std::runtime_error("complete_orthonormal_basis: failed to complete");
  }
  return added;
}

}  // namespace hdis
