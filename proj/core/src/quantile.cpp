#include "qad/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qad/constants.hpp"
#include "qad/specfun.hpp"

namespace robust {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("Sample: empty input");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Sample: non-finite value");
    }
  }
}

HdiWidth::HdiWidth(double width) : width_(width) {
  if (!(width > 0.0 && width <= 1.0)) {
    throw std::invalid_argument("HdiWidth: width must lie in (0, 1]");
  }
}

double hf7_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) {
    throw std::invalid_argument("hf7_sorted: empty sample");
  }
  const double h = static_cast<double>(n - 1) * p + 1.0;
  const double fl = std::floor(h);
  std::size_t lo = static_cast<std::size_t>(fl) - 1;
  if (lo >= n) lo = n - 1;
  const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(h)) - 1, n - 1);
  return sorted[lo] + (h - fl) * (sorted[hi] - sorted[lo]);
}

double hf7_quantile(const Sample& x, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("hf7_quantile: order must lie in [0, 1]");
  }
  std::vector<double> sorted(x.values().begin(), x.values().end());
  std::sort(sorted.begin(), sorted.end());
  return hf7_sorted(sorted, p);
}

double sample_median(const Sample& x) { return hf7_quantile(x, 0.5); }

double median_inplace(std::span<double> scratch) {
  const std::size_t n = scratch.size();
  if (n == 0) {
    throw std::invalid_argument("median_inplace: empty buffer");
  }
  const std::size_t k = n / 2;
  std::nth_element(scratch.begin(), scratch.begin() + k, scratch.end());
  const double upper = scratch[k];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(scratch.begin(), scratch.begin() + k);
  return lower + 0.5 * (upper - lower);
}

std::vector<double> hd_weights(std::size_t n, double q) {
  if (n == 0) {
    throw std::invalid_argument("hd_weights: empty sample");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("hd_weights: order must lie strictly inside (0, 1)");
  }
  const double a = static_cast<double>(n + 1) * q;
  const double b = static_cast<double>(n + 1) * (1.0 - q);
  std::vector<double> weights(n);
  double prev = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double cur = i == n ? 1.0
                              : regularized_incomplete_beta(
                                    static_cast<double>(i) / static_cast<double>(n), a, b);
    weights[i - 1] = cur - prev;
    prev = cur;
  }
  return weights;
}

double hd_quantile(const Sample& x, double q) {
  const auto weights = hd_weights(x.size(), q);
  std::vector<double> sorted(x.values().begin(), x.values().end());
  std::sort(sorted.begin(), sorted.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    acc += weights[i] * sorted[i];
  }
  return acc;
}

ThdWeights thd_median_weights(std::size_t n, double width) {
  if (n == 0) {
    throw std::invalid_argument("thd_median_weights: empty sample");
  }
  if (n == 1) {
    return {0, {1.0}};
  }
  const double nn = static_cast<double>(n);
  const double shape = (nn + 1.0) / 2.0;
  const double lo = 0.5 - width / 2.0;
  const double hi = 0.5 + width / 2.0;
  const double cdf_lo = regularized_incomplete_beta(lo, shape, shape);
  const double cdf_hi = regularized_incomplete_beta(hi, shape, shape);
  const double denom = cdf_hi - cdf_lo;
  const auto clamped_cdf = [&](double u) {
    u = std::clamp(u, lo, hi);
    return (regularized_incomplete_beta(u, shape, shape) - cdf_lo) / denom;
  };
  const auto first = static_cast<std::size_t>(std::floor(lo * nn));
  const auto last = static_cast<std::size_t>(std::ceil(hi * nn));  // one past, as an order-stat count
  ThdWeights result;
  result.first = first;
  result.weights.resize(last - first);
  double prev = clamped_cdf(static_cast<double>(first) / nn);
  double sum = 0.0;
  for (std::size_t j = first + 1; j <= last; ++j) {
    const double cur = clamped_cdf(static_cast<double>(j) / nn);
    result.weights[j - first - 1] = cur - prev;
    sum += cur - prev;
    prev = cur;
  }
  // Absorb beta-CDF rounding so the weights sum to 1 exactly.
  for (double& w : result.weights) w /= sum;
  return result;
}

double thd_median(const Sample& x, HdiWidth width) {
  const std::size_t n = x.size();
  if (n == 1) return x.values().front();
  const auto thd = thd_median_weights(n, width.value());
  std::vector<double> sorted(x.values().begin(), x.values().end());
  std::sort(sorted.begin(), sorted.end());
  double acc = 0.0;
  for (std::size_t j = 0; j < thd.weights.size(); ++j) {
    acc += thd.weights[j] * sorted[thd.first + j];
  }
  return acc;
}

double sthdme(const Sample& x) { return thd_median(x, HdiWidth(kRhoS)); }

double othdme(const Sample& x) { return thd_median(x, HdiWidth(kRhoO)); }

}  // namespace robust
