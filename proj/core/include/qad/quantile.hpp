#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace robust {

// Validated estimator input: a nonempty collection of finite reals.
// Missing-value markers must be stripped before construction (the CLI layer
// does this for text input).
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// Width of the highest density interval used by the trimmed Harrell-Davis
// median estimator; lies in (0, 1].
class HdiWidth {
 public:
  explicit HdiWidth(double width);
  double value() const { return width_; }

 private:
  double width_;
};

// Hyndman-Fan Type 7 quantile: linear interpolation of order statistics at
// h = (n-1)p + 1. Accepts 0 <= p <= 1 (p=0 gives the minimum, p=1 the
// maximum). Sorts an internal copy.
double hf7_quantile(const Sample& x, double p);

// HF7 on data that is already sorted ascending; no copies, no checks beyond
// emptiness. The hot path for the Monte-Carlo engine.
double hf7_sorted(std::span<const double> sorted, double p);

// Sample median, identical to hf7_quantile(x, 0.5).
double sample_median(const Sample& x);

// Median of a scratch buffer via partial selection; reorders the contents.
double median_inplace(std::span<double> scratch);

// Harrell-Davis quantile estimator: Beta((n+1)q, (n+1)(1-q)) CDF-weighted
// sum of all order statistics. Requires 0 < q < 1.
double hd_quantile(const Sample& x, double q);

// Harrell-Davis weights for sample size n at order q; nonnegative, sum to 1.
std::vector<double> hd_weights(std::size_t n, double q);

// Weights of the trimmed Harrell-Davis median estimator restricted to the
// highest density interval [0.5 - D/2, 0.5 + D/2] of Beta((n+1)/2, (n+1)/2).
// `first` is the zero-based index of the lowest order statistic that
// receives weight; weights cover order statistics first .. first+size-1.
struct ThdWeights {
  std::size_t first = 0;
  std::vector<double> weights;
};
ThdWeights thd_median_weights(std::size_t n, double width);

// Trimmed Harrell-Davis median estimator; n == 1 returns the sole element.
double thd_median(const Sample& x, HdiWidth width);

// The standard (D = rho_s) and optimal (D = rho_o) trimmed Harrell-Davis
// median estimators.
double sthdme(const Sample& x);
double othdme(const Sample& x);

}  // namespace robust
