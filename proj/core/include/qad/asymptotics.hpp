#pragma once

#include <functional>
#include <optional>

#include "qad/distributions.hpp"

namespace robust {

// Asymptotic QAD value at order p: either a scalar, or the [lower, upper]
// interval a discontinuity of the deviation quantile function jumps across.
struct VpResult {
  enum class Kind { kScalar, kJump };

  static VpResult scalar(double v) { return {Kind::kScalar, v, v, v}; }
  static VpResult jump(double lower, double upper) {
    return {Kind::kJump, lower, lower, upper};
  }

  bool is_jump() const { return kind == Kind::kJump; }

  Kind kind = Kind::kScalar;
  double value = 0.0;  // scalar case
  double lower = 0.0;  // jump case
  double upper = 0.0;
};

// Asymptotic QAD of a reference distribution at order p in (0, 1); exact
// closed forms for the continuous families and the trimodal mixture,
// numeric inversion of the deviation CDF for Poisson.
VpResult asymptotic_qad(const Distribution& d, double p);

// Solves F(M + v) - F((M - v)^-) = p for v by bisection (absolute tolerance
// 1e-10). With `support_min` given and p above the critical order
// p* = F(2M - support_min), solves the one-sided equation F(M + v) = p.
// A plateau of the objective at level p is reported as a Jump bracketing
// the discontinuity of the deviation quantile function. Throws
// std::runtime_error when p is unattainable within the search range.
VpResult solve_vp_numeric(const std::function<double(double)>& cdf, double median, double p,
                          std::optional<double> support_min = std::nullopt);

// Asymptotic consistency constant K_p = 1 / Phi^-1((p+1)/2), p in (0, 1).
double asymptotic_constant(double p);

// Asymptotic Gaussian efficiency of QAD(X, p) relative to the unbiased
// standard deviation: z^2 / (pi p (1-p) e^{z^2}) with z = Phi^-1((p+1)/2).
double asymptotic_gaussian_efficiency(double p);

// Argmax of the efficiency curve on (0.5, 0.999), golden-section search to
// 1e-10 argument tolerance.
double find_optimal_p();

// F(M + k m) - F(M - k m) with m the asymptotic MAD value of d and M its
// median. Throws std::domain_error when the MAD value is jump-valued.
double coverage_probability(const Distribution& d, double k);

}  // namespace robust
