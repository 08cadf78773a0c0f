#include "hdis/special_functions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hdis {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kSqrt2Pi = 2.5066282746310005024;

// Regularized lower incomplete gamma P(a, z): series for z < a + 1,
// continued fraction (modified Lentz) otherwise.
double reg_lower_gamma(double a, double z) {
  if (z <= 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (z < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= z / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(a * std::log(z) - z - lg);
  }
  // continued fraction for Q(a, z)
  const double tiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(a * std::log(z) - z - lg) * h;
  return 1.0 - q;
}

constexpr double kGammaShape = 6.0;
constexpr double kGammaRate = 6.0;

}  // namespace

double normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace {

// Rational approximation on (0, 0.5], then one Halley step against the
// erfc-based CDF.
double normal_quantile_half(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  for (int it = 0; it < 2; ++it) {
    const double e = normal_cdf(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream msg;
    msg << "normal_quantile: p = " << p << " outside (0, 1)";
    throw std::domain_error(msg.str());
  }
  if (p > 0.5) return -normal_quantile_half(1.0 - p);
  return normal_quantile_half(p);
}

double gamma66_pdf(double x) {
  if (x <= 0.0) return 0.0;
  return std::exp(kGammaShape * std::log(kGammaRate) +
                  (kGammaShape - 1.0) * std::log(x) - kGammaRate * x -
                  std::lgamma(kGammaShape));
}

double gamma66_cdf(double x) {
  if (x < 0.0) {
    throw std::domain_error("gamma66_cdf: negative argument");
  }
  return reg_lower_gamma(kGammaShape, kGammaRate * x);
}

double gamma66_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream msg;
    msg << "gamma66_quantile: p = " << p << " outside (0, 1)";
    throw std::domain_error(msg.str());
  }
  // Wilson-Hilferty initial guess, small-z inversion as fallback
  double x;
  {
    const double z = normal_quantile(p);
    const double g = 1.0 - 1.0 / (9.0 * kGammaShape) +
                     z / (3.0 * std::sqrt(kGammaShape));
    x = kGammaShape * g * g * g / kGammaRate;
  }
  if (!(x > 0.0)) {
    // P(a, z) ~ z^a / Gamma(a+1) for small z
    const double z =
        std::exp((std::log(p) + std::lgamma(kGammaShape + 1.0)) / kGammaShape);
    x = z / kGammaRate;
  }
  double lo = 0.0;
  double hi = std::max(x * 2.0, 1.0);
  for (int i = 0; i < 200 && gamma66_cdf(hi) < p; ++i) hi *= 2.0;
  x = std::min(std::max(x, 1e-300), hi);
  // bracketed Newton
  for (int it = 0; it < 100; ++it) {
    const double f = gamma66_cdf(x) - p;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double df = gamma66_pdf(x);
    double step;
    if (df > 0.0 && std::isfinite(df)) {
      step = f / df;
    } else {
      step = 0.0;
    }
    double next = x - step;
    if (!(next > lo) || !(next < hi) || step == 0.0) {
      next = 0.5 * (lo + hi);
    }
    const double delta = std::abs(next - x);
    x = next;
    if (delta <= 1e-12 * std::max(1.0, x)) break;
  }
  return x;
}

}  // namespace hdis
