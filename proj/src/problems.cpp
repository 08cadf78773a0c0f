#include "hdis/problems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hdis/special_functions.hpp"

namespace hdis {

TestProblem sum_limit_state(std::size_t n) {
  if (n < 1) throw std::invalid_argument("sum_limit_state: n must be >= 1");
  const double threshold = 3.0 * std::sqrt(static_cast<double>(n));

  TestProblem p;
  p.name = "sum";
  p.dim = n;
  p.kind = PhiKind::Indicator;
  p.phi = [n, threshold](const Vec& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += x[j];
    return s - threshold >= 0.0 ? 1.0 : 0.0;
  };

  // Conditional moments of a standard normal given exceedance of 3.
  const double tail = normal_cdf(-3.0);
  const double alpha = normal_pdf(3.0) / tail;
  const double v = 1.0 + 3.0 * alpha - alpha * alpha;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  Vec ones(n, inv_sqrt_n);

  AnalyticRecord rec;
  rec.integral = tail;
  rec.m_star.assign(n, alpha * inv_sqrt_n);
  rec.sigma_star = LowRankCovariance(n, {ones}, {v});
  p.analytic = std::move(rec);
  return p;
}

namespace {

// Conditional moments of (x1, x2, x3) given x1 >= 1 + 25 x2^2 + 30 x3^2,
// reduced to a two-dimensional integral over (x2, x3) using the Gaussian
// identities int_t^inf u phi(u) du = phi(t) and
// int_t^inf u^2 phi(u) du = t phi(t) + Phi(-t). Composite Simpson on
// [0,1]^2 (the integrand is symmetric in each variable and vanishes to
// double precision beyond |x2|, |x3| ~ 1).
ParabolicMoments compute_parabolic_moments() {
  const int intervals = 1600;  // per axis, must be even
  const double h = 1.0 / intervals;

  auto simpson_w = [intervals](int i) -> double {
    if (i == 0 || i == intervals) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
  };

  double s_e = 0.0, s_m = 0.0, s_x1sq = 0.0, s_22 = 0.0, s_33 = 0.0;
  for (int iy = 0; iy <= intervals; ++iy) {
    const double y = iy * h;
    const double wy = simpson_w(iy) * normal_pdf(y);
    const double y2 = y * y;
    double r_e = 0.0, r_m = 0.0, r_x1sq = 0.0, r_22 = 0.0, r_33 = 0.0;
    for (int iz = 0; iz <= intervals; ++iz) {
      const double z = iz * h;
      const double t = 1.0 + 25.0 * y2 + 30.0 * z * z;
      const double sf = normal_cdf(-t);
      const double pd = normal_pdf(t);
      const double w = simpson_w(iz) * normal_pdf(z);
      r_e += w * sf;
      r_m += w * pd;
      r_x1sq += w * (t * pd + sf);
      r_22 += w * y2 * sf;
      r_33 += w * z * z * sf;
    }
    s_e += wy * r_e;
    s_m += wy * r_m;
    s_x1sq += wy * r_x1sq;
    s_22 += wy * r_22;
    s_33 += wy * r_33;
  }
  // 4x from the even symmetry in x2 and x3
  const double scale = 4.0 * h * h / 9.0;
  const double i_e = scale * s_e;
  const double i_m = scale * s_m;
  const double i_x1sq = scale * s_x1sq;
  const double i_22 = scale * s_22;
  const double i_33 = scale * s_33;

  ParabolicMoments m;
  m.integral = i_e;
  m.alpha = i_m / i_e;
  m.lambda1 = i_x1sq / i_e - m.alpha * m.alpha;
  m.lambda2 = i_22 / i_e;
  m.lambda3 = i_33 / i_e;
  return m;
}

}  // namespace

const ParabolicMoments& parabolic_conditional_moments() {
  static const ParabolicMoments moments = compute_parabolic_moments();
  return moments;
}

TestProblem parabolic_limit_state(std::size_t n) {
  if (n < 3) {
    throw std::invalid_argument("parabolic_limit_state: n must be >= 3");
  }
  TestProblem p;
  p.name = "parabolic";
  p.dim = n;
  p.kind = PhiKind::Indicator;
  p.phi = [](const Vec& x) {
    return x[0] - 25.0 * x[1] * x[1] - 30.0 * x[2] * x[2] - 1.0 >= 0.0 ? 1.0
                                                                       : 0.0;
  };

  const ParabolicMoments& m = parabolic_conditional_moments();
  AnalyticRecord rec;
  rec.integral = m.integral;
  rec.m_star.assign(n, 0.0);
  rec.m_star[0] = m.alpha;
  std::vector<Vec> dirs(3, Vec(n, 0.0));
  dirs[0][0] = 1.0;
  dirs[1][1] = 1.0;
  dirs[2][2] = 1.0;
  rec.sigma_star =
      LowRankCovariance(n, std::move(dirs), {m.lambda1, m.lambda2, m.lambda3});
  p.analytic = std::move(rec);
  return p;
}

TestProblem portfolio_loss(std::size_t n_obligors) {
  if (n_obligors < 4) {
    throw std::invalid_argument("portfolio_loss: need at least 4 obligors");
  }
  const std::size_t n = n_obligors;
  const double q = 0.25;
  const double w = 3.0 * std::sqrt(1.0 - q * q);
  const double loss_threshold = 0.5 * std::sqrt(static_cast<double>(n));
  const double count_threshold = 0.25 * static_cast<double>(n);

  TestProblem p;
  p.name = "portfolio";
  p.dim = n + 2;
  p.kind = PhiKind::Indicator;
  p.phi = [n, q, w, loss_threshold, count_threshold](const Vec& x) {
    const double u = x[0];
    // mu = F_Gamma^{-1}(F_N(mu~)); clamp the probability away from {0, 1}
    // where the normal CDF under/overflows in double precision.
    double prob = normal_cdf(x[1]);
    prob = std::min(std::max(prob, 1e-310), 1.0 - 1e-16);
    const double mu = gamma66_quantile(prob);
    // Psi_j >= 0.5 sqrt(n)  <=>  w eta_j >= 0.5 sqrt(n) sqrt(mu) - q U
    const double eta_min = (loss_threshold * std::sqrt(mu) - q * u) / w;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[2 + j] >= eta_min) ++count;
    }
    // the loss must strictly exceed zero
    return static_cast<double>(count) > count_threshold ? 1.0 : 0.0;
  };
  return p;
}

TestProblem asian_payoff(std::size_t n_steps) {
  if (n_steps < 1) throw std::invalid_argument("asian_payoff: n must be >= 1");
  const std::size_t n = n_steps;
  const double s0 = 50.0;
  const double r = 0.05;
  const double t_mat = 0.5;
  const double sigma = 0.1;
  const double strike = 55.0;
  const double drift = (r - 0.5 * sigma * sigma) * t_mat / n;
  const double vol = sigma * std::sqrt(t_mat / n);
  const double discount = std::exp(-r * t_mat);

  TestProblem p;
  p.name = "asian";
  p.dim = n;
  p.kind = PhiKind::General;
  p.phi = [n, s0, strike, drift, vol, discount](const Vec& x) {
    double log_path = 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      log_path += drift + vol * x[k];
      sum += std::exp(log_path);
    }
    const double avg = s0 / static_cast<double>(n) * sum;
    return avg > strike ? discount * (avg - strike) : 0.0;
  };
  return p;
}

TestProblem make_problem(const std::string& name, std::size_t n) {
  if (name == "sum") return sum_limit_state(n);
  if (name == "parabolic") return parabolic_limit_state(n);
  if (name == "portfolio") return portfolio_loss(n);
  if (name == "asian") return asian_payoff(n);
  std::ostringstream msg;
  msg << "make_problem: unknown problem '" << name
      << "' (expected sum, parabolic, portfolio or asian)";
  throw std::invalid_argument(msg.str());
}

std::vector<std::string> problem_names() {
  return {"sum", "parabolic", "portfolio", "asian"};
}

}  // namespace hdis
