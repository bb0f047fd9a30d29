#include "qad/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qad/specfun.hpp"

namespace robust {

namespace {

constexpr double kBisectionTolerance = 1e-10;
constexpr double kJumpThreshold = 1e-7;
constexpr double kVMaxCap = 1e12;

void require_open_unit(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error(std::string(who) + ": order must lie strictly inside (0, 1)");
  }
}

// Smallest v in [0, hi] with objective(v) >= target, assuming
// objective(hi) >= target and the objective is nondecreasing.
double bisect_lowest(const std::function<double(double)>& objective, double hi, double target,
                     bool strict) {
  double lo = 0.0;
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double val = objective(mid);
    const bool reached = strict ? val > target : val >= target;
    if (reached) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

VpResult solve_monotone(const std::function<double(double)>& objective, double p) {
  // Bracket: grow until the objective reaches p.
  double hi = 1.0;
  while (objective(hi) < p) {
    hi *= 2.0;
    if (hi > kVMaxCap) {
      throw std::runtime_error("solve_vp_numeric: order not attainable within the search range");
    }
  }
  const double v_lo = bisect_lowest(objective, hi, p, /*strict=*/false);

  double hi2 = hi;
  while (objective(hi2) <= p) {
    hi2 *= 2.0;
    if (hi2 > kVMaxCap) {
      // The objective saturates at exactly p; treat the lower edge as scalar.
      return VpResult::scalar(v_lo);
    }
  }
  const double v_hi = bisect_lowest(objective, hi2, p, /*strict=*/true);
  if (v_hi - v_lo > kJumpThreshold) {
    return VpResult::jump(v_lo, v_hi);
  }
  return VpResult::scalar(v_lo);
}

}  // namespace

VpResult solve_vp_numeric(const std::function<double(double)>& cdf, double median, double p,
                          std::optional<double> support_min) {
  require_open_unit(p, "solve_vp_numeric");
  if (support_min.has_value()) {
    const double p_star = cdf(2.0 * median - *support_min);
    if (p > p_star) {
      // One-sided: below the support minimum the lower CDF term is zero.
      return solve_monotone([&](double v) { return cdf(median + v); }, p);
    }
  }
  const auto two_sided = [&](double v) {
    const double left = median - v;
    return cdf(median + v) - cdf(std::nextafter(left, -std::numeric_limits<double>::infinity()));
  };
  return solve_monotone(two_sided, p);
}

VpResult asymptotic_qad(const Distribution& d, double p) {
  require_open_unit(p, "asymptotic_qad");
  switch (d.kind()) {
    case DistributionKind::kNormal:
      return VpResult::scalar(d.sigma() * normal_quantile((p + 1.0) / 2.0));
    case DistributionKind::kUniform01:
      return VpResult::scalar(p / 2.0);
    case DistributionKind::kExponential1:
      if (p <= 0.75) {
        return VpResult::scalar(std::log(p + std::sqrt(p * p + 1.0)));
      }
      return VpResult::scalar(-std::numbers::ln2 - std::log(1.0 - p));
    case DistributionKind::kPareto11:
      if (p <= 2.0 / 3.0) {
        return VpResult::scalar(-1.0 / p + std::sqrt(1.0 / (p * p) + 4.0));
      }
      return VpResult::scalar((2.0 * p - 1.0) / (1.0 - p));
    case DistributionKind::kTrimodal:
      if (p < 0.5) return VpResult::scalar(p);
      if (p > 0.5) return VpResult::scalar(2.0 * p + 2.5);
      return VpResult::jump(0.5, 3.5);
    case DistributionKind::kPoisson:
      return solve_vp_numeric([&](double x) { return cdf(d, x); }, true_median(d), p, 0.0);
  }
  throw std::logic_error("asymptotic_qad: unknown distribution kind");
}

double asymptotic_constant(double p) {
  require_open_unit(p, "asymptotic_constant");
  return 1.0 / normal_quantile((p + 1.0) / 2.0);
}

double asymptotic_gaussian_efficiency(double p) {
  require_open_unit(p, "asymptotic_gaussian_efficiency");
  const double z = normal_quantile((p + 1.0) / 2.0);
  const double z2 = z * z;
  return z2 / (std::numbers::pi * p * (1.0 - p) * std::exp(z2));
}

double find_optimal_p() {
  constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
  double a = 0.5;
  double b = 0.999;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = asymptotic_gaussian_efficiency(c);
  double fd = asymptotic_gaussian_efficiency(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = asymptotic_gaussian_efficiency(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = asymptotic_gaussian_efficiency(d);
    }
  }
  return 0.5 * (a + b);
}

double coverage_probability(const Distribution& d, double k) {
  if (!(k > 0.0)) {
    throw std::domain_error("coverage_probability: k must be positive");
  }
  const VpResult mad_value = asymptotic_qad(d, 0.5);
  if (mad_value.is_jump()) {
    throw std::domain_error("coverage_probability: the MAD of this distribution is jump-valued");
  }
  const double median = true_median(d);
  const double half_width = k * mad_value.value;
  return cdf(d, median + half_width) - cdf(d, median - half_width);
}

}  // namespace robust
