#pragma once

#include <cstddef>
#include <vector>

namespace hdis {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec normalized(const Vec& a);
// y += s * x
void add_scaled(Vec& y, double s, const Vec& x);

/// Dense symmetric matrix with full row-major storage. The two mirrored
/// entries are always written together, so (i,j) == (j,i) holds exactly.
class DenseSym {
 public:
  explicit DenseSym(std::size_t n);
  static DenseSym identity(std::size_t n);
  // Accepts a full n*n matrix, verifies |a_ij - a_ji| <= sym_tol * scale and
  // symmetrizes exactly; throws std::invalid_argument on larger asymmetry.
  static DenseSym from_data(std::size_t n, std::vector<double> data,
                            double sym_tol = 1e-9);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  const std::vector<double>& data() const { return data_; }

  double trace() const;
  double frobenius() const;
  Vec multiply(const Vec& x) const;
  // x^T A x
  double quad(const Vec& x) const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct Eigenpair {
  double value = 0.0;
  Vec direction;  // unit Euclidean norm
};

/// All eigenpairs of one symmetric matrix, eigenvalues in descending order.
struct Spectrum {
  std::vector<Eigenpair> pairs;
  std::size_t dim() const { return pairs.size(); }
  std::vector<double> values() const;
};

/// Cyclic Jacobi eigendecomposition. Sweeps until the off-diagonal Frobenius
/// norm drops below tol * max(1, ||A||_F); throws std::runtime_error carrying
/// the residual norm if max_sweeps is exhausted first.
Spectrum sym_eigendecompose(const DenseSym& a, int max_sweeps = 100,
                            double tol = 1e-12);

// Extends k orthonormal vectors to a full orthonormal basis of R^n; returns
// the n-k added vectors.
std::vector<Vec> complete_orthonormal_basis(const std::vector<Vec>& dirs,
                                            std::size_t n);

}  // namespace hdis
