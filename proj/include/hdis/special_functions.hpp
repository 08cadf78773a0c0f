#pragma once

namespace hdis {

double normal_pdf(double x);

// Phi(x), erfc based
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1); rational initial guess plus one Halley
// refinement. Throws std::domain_error outside (0,1).
double normal_quantile(double p);

// Gamma distribution with shape 6 and rate 6 (mean 1), as used by the
// portfolio mixing variable.
double gamma66_pdf(double x);
double gamma66_cdf(double x);
double gamma66_quantile(double p);

}  // namespace hdis
