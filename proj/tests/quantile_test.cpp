#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qad/constants.hpp"
#include "qad/quantile.hpp"

using namespace robust;

namespace {

Sample make(std::initializer_list<double> values) { return Sample(std::vector<double>(values)); }

// Independent beta-CDF oracle: adaptive Simpson quadrature of the
// Beta(a, b) density. Slow but implementation-independent.
double beta_density(double t, double a, double b, double log_norm) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - log_norm);
}

double simpson(double (*f)(double, double, double, double), double lo, double hi, double a,
               double b, double log_norm) {
  const double mid = 0.5 * (lo + hi);
  return (hi - lo) / 6.0 *
         (f(lo, a, b, log_norm) + 4.0 * f(mid, a, b, log_norm) + f(hi, a, b, log_norm));
}

double adaptive(double (*f)(double, double, double, double), double lo, double hi, double a,
                double b, double log_norm, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = simpson(f, lo, mid, a, b, log_norm);
  const double right = simpson(f, mid, hi, a, b, log_norm);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(f, lo, mid, a, b, log_norm, left, tol / 2, depth - 1) +
         adaptive(f, mid, hi, a, b, log_norm, right, tol / 2, depth - 1);
}

double beta_cdf_quadrature(double u, double a, double b) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double log_norm = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double whole = simpson(beta_density, 0.0, u, a, b, log_norm);
  return adaptive(beta_density, 0.0, u, a, b, log_norm, whole, 1e-13, 40);
}

// Transcription of the reference trimmed-HD algorithm with the quadrature
// CDF; used as the oracle for thd_median.
double thd_reference(std::vector<double> x, double width) {
  const std::size_t n = x.size();
  if (n == 1) return x[0];
  std::sort(x.begin(), x.end());
  const double shape = (static_cast<double>(n) + 1.0) / 2.0;
  const double lo = 0.5 - width / 2.0;
  const double hi = 0.5 + width / 2.0;
  const double cdf_lo = beta_cdf_quadrature(lo, shape, shape);
  const double cdf_hi = beta_cdf_quadrature(hi, shape, shape);
  const auto cdf = [&](double u) {
    u = std::clamp(u, lo, hi);
    return (beta_cdf_quadrature(u, shape, shape) - cdf_lo) / (cdf_hi - cdf_lo);
  };
  const auto i_lo = static_cast<std::size_t>(std::floor(lo * n));
  const auto i_hi = static_cast<std::size_t>(std::ceil(hi * n));
  double acc = 0.0;
  double prev = cdf(static_cast<double>(i_lo) / n);
  for (std::size_t j = i_lo + 1; j <= i_hi; ++j) {
    const double cur = cdf(static_cast<double>(j) / n);
    acc += (cur - prev) * x[j - 1];
    prev = cur;
  }
  return acc;
}

}  // namespace

TEST_CASE("Sample validates its input") {
  CHECK_THROWS_AS(Sample(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(Sample({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  CHECK(make({1.0}).size() == 1);
}

TEST_CASE("hf7_quantile basics") {
  CHECK(hf7_quantile(make({1, 2, 3, 4}), 0.5) == 2.5);
  CHECK(hf7_quantile(make({10, 20, 30}), 0.25) == 15.0);  // h = 1.5
  for (double p : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(hf7_quantile(make({7}), p) == 7.0);
  }
  CHECK(hf7_quantile(make({5, 1, 9, 3}), 0.0) == 1.0);
  CHECK(hf7_quantile(make({5, 1, 9, 3}), 1.0) == 9.0);
  CHECK_THROWS_AS(hf7_quantile(make({1, 2}), 1.5), std::domain_error);
}

TEST_CASE("sample_median basics") {
  CHECK(sample_median(make({3, 1, 2})) == 2.0);
  CHECK(sample_median(make({1, 2, 3, 4})) == 2.5);
  CHECK(sample_median(make({5, 5, 5, 5, 5})) == 5.0);
}

TEST_CASE("median_inplace matches sample_median") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unif(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    std::vector<double> values(n);
    for (double& v : values) v = unif(gen);
    std::vector<double> scratch = values;
    CHECK(median_inplace(scratch) == sample_median(Sample(values)));
  }
}

TEST_CASE("hf7 monotone in p and permutation invariant") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unif(-10, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 30;
    std::vector<double> values(n);
    for (double& v : values) v = unif(gen);
    const Sample sample(values);
    double prev = hf7_quantile(sample, 0.0);
    for (int i = 1; i <= 50; ++i) {
      const double cur = hf7_quantile(sample, i / 50.0);
      CHECK(cur >= prev);
      prev = cur;
    }
    std::shuffle(values.begin(), values.end(), gen);
    CHECK(hf7_quantile(Sample(values), 0.37) == hf7_quantile(sample, 0.37));
  }
}

TEST_CASE("hd_quantile basics") {
  CHECK(hd_quantile(make({42}), 0.3) == 42.0);
  CHECK(std::fabs(hd_quantile(make({4, 10}), 0.5) - 7.0) <= 1e-12);
  CHECK(std::fabs(hd_quantile(make({1, 2, 3, 4, 5}), 0.5) - 3.0) <= 1e-12);
  CHECK_THROWS_AS(hd_quantile(make({1, 2}), 0.0), std::domain_error);
  CHECK_THROWS_AS(hd_quantile(make({1, 2}), 1.0), std::domain_error);
}

TEST_CASE("hd and thd weights are nonnegative and sum to one") {
  for (std::size_t n : {1u, 2u, 3u, 10u, 100u, 1000u, 10000u}) {
    for (double q : {0.25, 0.5, 0.9}) {
      const auto weights = hd_weights(n, q);
      REQUIRE(weights.size() == n);
      double sum = 0.0;
      for (double w : weights) {
        CHECK(w >= -1e-15);
        sum += w;
      }
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
    for (double width : {0.3, kRhoS, kRhoO, 1.0}) {
      const auto thd = thd_median_weights(n, width);
      double sum = 0.0;
      for (double w : thd.weights) {
        CHECK(w >= -1e-15);
        sum += w;
      }
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
      CHECK(thd.first + thd.weights.size() <= n);
    }
  }
}

TEST_CASE("thd_median with full interval equals the HD median") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> unif(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    std::vector<double> values(n);
    for (double& v : values) v = unif(gen);
    const Sample sample(values);
    CHECK(std::fabs(thd_median(sample, HdiWidth(1.0)) - hd_quantile(sample, 0.5)) <= 1e-12);
    CHECK(std::fabs(thd_median(sample, HdiWidth(1.0 - 1e-9)) - hd_quantile(sample, 0.5)) <= 1e-6);
  }
}

TEST_CASE("thd_median on symmetric samples") {
  for (double width : {0.2, kRhoS, kRhoO, 1.0}) {
    CHECK(std::fabs(thd_median(make({1, 2, 3, 4, 5}), HdiWidth(width)) - 3.0) <= 1e-12);
  }
  CHECK(thd_median(make({42}), HdiWidth(0.5)) == 42.0);
  CHECK(sthdme(make({42})) == 42.0);
  CHECK(othdme(make({42})) == 42.0);
  CHECK(std::fabs(sthdme(make({1, 2, 3})) - 2.0) <= 1e-12);
}

TEST_CASE("trimming pulls the estimate away from extreme order statistics") {
  const Sample sample = make({0, 0, 0, 100});
  const double trimmed = sthdme(sample);
  const double full = hd_quantile(sample, 0.5);
  CHECK(trimmed < full);
  // Frozen from the reference algorithm run at high precision.
  CHECK(std::fabs(trimmed - 8.920189522458987) <= 1e-9);
  CHECK(std::fabs(full - 12.65849975501614) <= 1e-9);
}

TEST_CASE("sthdme/othdme match the reference algorithm") {
  const std::vector<double> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(std::fabs(sthdme(Sample(ten)) - 5.5) <= 1e-12);
  CHECK(std::fabs(othdme(Sample(ten)) - 5.5) <= 1e-12);

  const std::vector<double> seven{3.1, -2.0, 5.5, 0.4, 9.9, 1.25, -7.75};
  // Frozen reference values.
  CHECK(std::fabs(sthdme(Sample(seven)) - 1.5922306152410242) <= 1e-9);
  CHECK(std::fabs(othdme(Sample(seven)) - 1.5838847086731398) <= 1e-9);
  CHECK(std::fabs(hd_quantile(Sample(seven), 0.5) - 1.5831973558150576) <= 1e-9);
  CHECK(std::fabs(hd_quantile(Sample(seven), 0.25) - -2.486453894939305) <= 1e-9);

  // Quadrature-based oracle executed in-place.
  CHECK(std::fabs(sthdme(Sample(seven)) - thd_reference(seven, kRhoS)) <= 1e-9);
  CHECK(std::fabs(othdme(Sample(seven)) - thd_reference(seven, kRhoO)) <= 1e-9);
  CHECK(std::fabs(sthdme(Sample(ten)) - thd_reference(ten, kRhoS)) <= 1e-9);
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> unif(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + gen() % 12;
    std::vector<double> values(n);
    for (double& v : values) v = unif(gen);
    CHECK(std::fabs(thd_median(Sample(values), HdiWidth(0.7)) - thd_reference(values, 0.7)) <=
          1e-9);
  }
}

TEST_CASE("location estimators are affine equivariant and permutation invariant") {
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> unif(-10, 10);
  std::uniform_real_distribution<double> scale(0.1, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 25;
    std::vector<double> values(n);
    for (double& v : values) v = unif(gen);
    const double a = scale(gen);
    const double b = unif(gen);
    std::vector<double> transformed(n);
    for (std::size_t i = 0; i < n; ++i) transformed[i] = a * values[i] + b;

    const Sample sample(values);
    const Sample moved(transformed);
    const auto close = [&](double lhs, double rhs) {
      CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, std::fabs(rhs)));
    };
    close(hf7_quantile(moved, 0.31), a * hf7_quantile(sample, 0.31) + b);
    close(sample_median(moved), a * sample_median(sample) + b);
    close(hd_quantile(moved, 0.4), a * hd_quantile(sample, 0.4) + b);
    close(sthdme(moved), a * sthdme(sample) + b);
    close(othdme(moved), a * othdme(sample) + b);

    std::shuffle(values.begin(), values.end(), gen);
    const Sample shuffled(values);
    CHECK(sthdme(shuffled) == sthdme(sample));
    CHECK(hd_quantile(shuffled, 0.4) == hd_quantile(sample, 0.4));
  }
}
