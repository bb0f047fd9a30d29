#pragma once

#include <cstdint>

namespace robust {

// Standard normal CDF. Absolute error below 1e-14 on the whole real line.
// Throws std::domain_error on non-finite input.
double normal_cdf(double x);

// Standard normal quantile function on (0, 1), rational approximation
// polished by one Halley step so that |normal_cdf(result) - p| <= 1e-13.
// Exactly odd around 0.5: normal_quantile(1 - p) == -normal_quantile(p)
// whenever both orders are representable.
// Throws std::domain_error for p outside (0, 1).
double normal_quantile(double p);

// Regularized incomplete beta function I_u(a, b) for a, b > 0, 0 <= u <= 1.
// Continued fraction (modified Lentz) with the usual symmetry switch at
// u > (a+1)/(a+b+2); accurate to ~1e-13 relative for parameters up to 1e5.
// Throws std::domain_error for parameters out of range.
double regularized_incomplete_beta(double u, double a, double b);

// Bias-correction factor c4(n) = sqrt(2/(n-1)) Gamma(n/2) / Gamma((n-1)/2)
// for the sample standard deviation under normality. Evaluated in
// log-Gamma space; n >= 2 (throws std::domain_error below).
double c4(std::int64_t n);

}  // namespace robust
