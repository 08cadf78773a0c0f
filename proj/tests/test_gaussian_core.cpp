#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "hdis/covariance.hpp"
#include "hdis/gaussian.hpp"
#include "hdis/linalg.hpp"
#include "hdis/rng.hpp"

using namespace hdis;

TEST_SUITE_BEGIN("gaussian_core");

TEST_CASE("jacobi eigendecomposition on the identity") {
  const Spectrum s = sym_eigendecompose(DenseSym::identity(3));
  REQUIRE(s.dim() == 3);
  for (const Eigenpair& ep : s.pairs) {
    CHECK(ep.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm2(ep.direction) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("jacobi eigendecomposition of a diagonal matrix") {
  DenseSym a(3);
  a.set(0, 0, 0.278);
  a.set(1, 1, 0.009);
  a.set(2, 2, 0.0075);
  const Spectrum s = sym_eigendecompose(a);
  CHECK(s.pairs[0].value == doctest::Approx(0.278).epsilon(1e-12));
  CHECK(s.pairs[1].value == doctest::Approx(0.009).epsilon(1e-12));
  CHECK(s.pairs[2].value == doctest::Approx(0.0075).epsilon(1e-12));
  // canonical axes up to sign
  CHECK(std::abs(s.pairs[0].direction[0]) == doctest::Approx(1.0));
  CHECK(std::abs(s.pairs[1].direction[1]) == doctest::Approx(1.0));
  CHECK(std::abs(s.pairs[2].direction[2]) == doctest::Approx(1.0));
}

TEST_CASE("spectrum reconstructs random symmetric matrices") {
  RandomStream rng(101);
  for (std::size_t n : {2u, 5u, 11u, 20u}) {
    DenseSym a(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) a.set(i, j, rng.normal());
    }
    const Spectrum s = sym_eigendecompose(a);
    // orthonormality
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double d = dot(s.pairs[i].direction, s.pairs[j].direction);
        CHECK(std::abs(d - (i == j ? 1.0 : 0.0)) < 1e-8);
      }
    }
    // descending order
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(s.pairs[i].value >= s.pairs[i + 1].value);
    }
    // sum lambda_i d_i d_i^T == a within 1e-8 * n (Frobenius)
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double rec = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          rec += s.pairs[r].value * s.pairs[r].direction[i] *
                 s.pairs[r].direction[j];
        }
        frob += (rec - a(i, j)) * (rec - a(i, j));
      }
    }
    CHECK(std::sqrt(frob) < 1e-8 * static_cast<double>(n));
  }
}

TEST_CASE("dense symmetric construction rejects asymmetry") {
  std::vector<double> data = {1.0, 0.5, 0.2, 1.0};
  CHECK_THROWS_AS(DenseSym::from_data(2, data), std::invalid_argument);
  data[2] = 0.5;
  CHECK_NOTHROW(DenseSym::from_data(2, data));
}

TEST_CASE("low-rank to dense") {
  SUBCASE("k = 0 is the identity") {
    const DenseSym m = lowrank_to_dense(LowRankCovariance::identity(3));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(m(i, j) == (i == j ? 1.0 : 0.0));
      }
    }
  }
  SUBCASE("axis-aligned direction") {
    const LowRankCovariance c(2, {{1.0, 0.0}}, {0.5});
    const DenseSym m = lowrank_to_dense(c);
    CHECK(m(0, 0) == doctest::Approx(0.5));
    CHECK(m(1, 1) == doctest::Approx(1.0));
    CHECK(m(0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("constant direction at n = 40") {
    const std::size_t n = 40;
    const double v = 0.25;
    const Vec ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const DenseSym m = lowrank_to_dense(LowRankCovariance(n, {ones}, {v}));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double want = (i == j ? 1.0 : 0.0) + (v - 1.0) / n;
        CHECK(m(i, j) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("low-rank log determinant") {
  CHECK(lowrank_logdet(LowRankCovariance::identity(4)) == 0.0);
  const LowRankCovariance c(3, {{1, 0, 0}, {0, 1, 0}}, {0.5, 2.0});
  CHECK(lowrank_logdet(c) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("low-rank inverse quadratic form") {
  SUBCASE("identity") {
    const Vec y = {1.0, 2.0, 2.0};
    CHECK(lowrank_inv_quad(LowRankCovariance::identity(3), y) ==
          doctest::Approx(9.0));
  }
  SUBCASE("axis-aligned") {
    const LowRankCovariance c(2, {{1.0, 0.0}}, {4.0});
    CHECK(lowrank_inv_quad(c, {2.0, 1.0}) == doctest::Approx(2.0));
  }
  SUBCASE("agrees with an LU solve") {
    RandomStream rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
      const std::size_t n = 10, k = 3;
      auto dirs = oracle::random_orthonormal(rng, n, k);
      std::vector<double> vars;
      for (std::size_t i = 0; i < k; ++i) {
        vars.push_back(0.05 + 3.0 * rng.uniform01());
      }
      const LowRankCovariance c(n, dirs, vars);
      const DenseSym dense = lowrank_to_dense(c);
      Vec y(n);
      for (double& x : y) x = rng.normal();
      const double fast = lowrank_inv_quad(c, y);
      const double slow = oracle::inv_quad(dense, y);
      CHECK(std::abs(fast - slow) <= 1e-9 * std::max(1.0, std::abs(slow)));
    }
  }
}

TEST_CASE("low-rank determinant and density agree with dense oracles") {
  RandomStream rng(77);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 12, k = 4;
    auto dirs = oracle::random_orthonormal(rng, n, k);
    std::vector<double> vars;
    for (std::size_t i = 0; i < k; ++i) {
      vars.push_back(0.1 + 2.5 * rng.uniform01());
    }
    const LowRankCovariance c(n, dirs, vars);
    const DenseSym dense = lowrank_to_dense(c);

    CHECK(std::abs(lowrank_logdet(c) - oracle::lu_logdet(dense)) <= 1e-9);

    Vec mean(n), x(n);
    for (double& v : mean) v = rng.normal();
    for (double& v : x) v = rng.normal();
    const GaussianLaw g_lr(mean, c);
    const GaussianLaw g_dense(mean, dense);
    const double a = g_lr.log_density(x);
    const double b = g_dense.log_density(x);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("eigen action of the low-rank form") {
  RandomStream rng(9);
  const std::size_t n = 15, k = 4;
  auto dirs = oracle::random_orthonormal(rng, n, k);
  const std::vector<double> vars = {0.2, 0.7, 1.5, 3.0};
  const LowRankCovariance c(n, dirs, vars);
  const DenseSym dense = lowrank_to_dense(c);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec got = dense.multiply(c.directions()[i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(got[j] - vars[i] * c.directions()[i][j]) < 1e-10);
    }
  }
  // any direction orthogonal to the span maps to itself
  Vec d(n);
  for (double& v : d) v = rng.normal();
  for (const Vec& u : c.directions()) add_scaled(d, -dot(u, d), u);
  d = normalized(d);
  const Vec got = dense.multiply(d);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(got[j] - d[j]) < 1e-10);
}

TEST_CASE("covariance construction guards") {
  CHECK_THROWS_AS(LowRankCovariance(3, {{1, 0, 0}}, {0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LowRankCovariance(3, {{1, 0, 0}}, {1e-13}),
                  std::invalid_argument);
  // strong orthogonality violation is rejected
  CHECK_THROWS_AS(
      LowRankCovariance(3, {{1, 0, 0}, {0.9, 0.43588989435, 0}}, {1.0, 1.0}),
      std::invalid_argument);
  // small violations are repaired by Gram-Schmidt
  Vec d1 = {1.0, 0.0, 0.0};
  Vec d2 = {1e-7, 1.0, 0.0};
  const LowRankCovariance repaired(3, {d1, d2}, {0.5, 2.0});
  CHECK(std::abs(dot(repaired.directions()[0], repaired.directions()[1])) <
        1e-12);
  CHECK(norm2(repaired.directions()[1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense gaussian law requires positive-definite covariance") {
  DenseSym a(2);
  a.set(0, 0, 1.0);
  a.set(1, 1, -0.5);
  CHECK_THROWS_AS(GaussianLaw(Vec{0.0, 0.0}, a), std::invalid_argument);
}

TEST_CASE("log density closed forms") {
  const GaussianLaw std1(Vec{0.0}, LowRankCovariance::identity(1));
  CHECK(std1.log_density({0.0}) ==
        doctest::Approx(-0.91893853320467274).epsilon(1e-14));
  const GaussianLaw std40(Vec(40, 0.0), LowRankCovariance::identity(40));
  CHECK(std40.log_density(Vec(40, 0.0)) ==
        doctest::Approx(-20.0 * 1.8378770664093454836).epsilon(1e-14));
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  RandomStream a(123), b(123);
  const LowRankCovariance c(4, {normalized({1, 1, 1, 1})}, {0.3});
  const GaussianLaw g(Vec{1, 2, 3, 4}, c);
  const auto xs = sample_gaussian(g, a, 10);
  const auto ys = sample_gaussian(g, b, 10);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(xs[i][j] == ys[i][j]);
  }
}

TEST_CASE("sampling moments match the law") {
  RandomStream rng(5150);
  const std::size_t n = 6;
  const std::size_t count = 100000;

  SUBCASE("identity covariance, zero mean") {
    const GaussianLaw g(Vec(n, 0.0), LowRankCovariance::identity(n));
    Vec mean(n, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      const Vec x = g.sample(rng);
      for (std::size_t j = 0; j < n; ++j) mean[j] += x[j];
    }
    const double bound = 4.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(mean[j] / count) < bound);
    }
  }

  SUBCASE("variance along a scaled axis") {
    const LowRankCovariance c(2, {{1.0, 0.0}}, {9.0});
    const GaussianLaw g(Vec{0.0, 0.0}, c);
    double ss = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Vec x = g.sample(rng);
      ss += x[0] * x[0];
    }
    const double var = ss / count;
    CHECK(var > 8.5);
    CHECK(var < 9.5);
  }

  SUBCASE("entrywise mean and covariance within five standard errors") {
    RandomStream gen(31);
    auto dirs = oracle::random_orthonormal(gen, n, 2);
    const LowRankCovariance c(n, dirs, {0.2, 2.5});
    Vec mean(n);
    for (double& v : mean) v = gen.normal();
    const GaussianLaw g(mean, c);
    const DenseSym sigma = lowrank_to_dense(c);

    Vec sum(n, 0.0);
    std::vector<double> sum2(n * n, 0.0);
    for (std::size_t s = 0; s < count; ++s) {
      const Vec x = g.sample(rng);
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] += x[i] - mean[i];
        for (std::size_t j = i; j < n; ++j) {
          sum2[i * n + j] += (x[i] - mean[i]) * (x[j] - mean[j]);
        }
      }
    }
    const double root_m = std::sqrt(static_cast<double>(count));
    for (std::size_t i = 0; i < n; ++i) {
      const double se_mean = std::sqrt(sigma(i, i)) / root_m;
      CHECK(std::abs(sum[i] / count) < 5.0 * se_mean);
      for (std::size_t j = i; j < n; ++j) {
        const double cov_ij = sum2[i * n + j] / count;
        const double se_cov = std::sqrt(
            (sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) / count);
        CHECK(std::abs(cov_ij - sigma(i, j)) < 5.0 * se_cov);
      }
    }
  }
}

TEST_CASE("likelihood ratio closed forms") {
  const GaussianLaw f3(Vec(3, 0.0), LowRankCovariance::identity(3));
  RandomStream rng(654);
  for (int i = 0; i < 20; ++i) {
    Vec x(3);
    for (double& v : x) v = rng.normal();
    CHECK(likelihood_ratio_log(f3, x) == doctest::Approx(0.0).epsilon(1e-13));
  }
  const LowRankCovariance c(1, {{1.0}}, {4.0});
  const GaussianLaw g(Vec{0.0}, c);
  CHECK(likelihood_ratio_log(g, {0.0}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("importance weights have unit mean under g") {
  RandomStream gen(8080);
  const std::size_t n = 10;
  const std::size_t count = 100000;
  auto dirs = oracle::random_orthonormal(gen, n, 3);
  // variances below 2 keep the second moment of f/g finite
  const LowRankCovariance c(n, dirs, {0.5, 1.4, 1.8});
  Vec mean(n);
  for (double& v : mean) v = 0.3 * gen.normal();
  const GaussianLaw g(mean, c);

  RandomStream rng(99);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Vec x = g.sample(rng);
    const double w = std::exp(likelihood_ratio_log(g, x));
    sum += w;
    sum_sq += w * w;
  }
  const double m = sum / count;
  const double var = std::max(0.0, sum_sq / count - m * m);
  const double se = std::sqrt(var / count);
  CHECK(std::abs(m - 1.0) < 3.0 * se);
}

TEST_CASE("random stream substreams differ and reproduce") {
  RandomStream a = RandomStream::derive({1, 2, 3});
  RandomStream b = RandomStream::derive({1, 2, 3});
  RandomStream c = RandomStream::derive({1, 2, 4});
  const std::uint64_t a0 = a.next_u64();
  CHECK(a0 == b.next_u64());
  CHECK(a0 != c.next_u64());
}

TEST_SUITE_END();
