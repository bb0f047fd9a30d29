#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "qad/distributions.hpp"

using namespace robust;

namespace {

std::vector<Distribution> all_families() {
  return {Distribution::normal(0, 1), Distribution::uniform01(), Distribution::exponential1(),
          Distribution::pareto11(),   Distribution::trimodal(),  Distribution::poisson(0.6)};
}

// Kolmogorov-Smirnov statistic against the true CDF; handles atoms by
// comparing both one-sided deviations at each distinct value.
double ks_statistic(const Distribution& d, std::vector<double> sorted_sample) {
  const double n = static_cast<double>(sorted_sample.size());
  double stat = 0.0;
  std::size_t i = 0;
  while (i < sorted_sample.size()) {
    std::size_t j = i;
    while (j < sorted_sample.size() && sorted_sample[j] == sorted_sample[i]) ++j;
    const double value = sorted_sample[i];
    const double ecdf_left = static_cast<double>(i) / n;
    const double ecdf_right = static_cast<double>(j) / n;
    const double cdf_left =
        cdf(d, std::nextafter(value, -std::numeric_limits<double>::infinity()));
    const double cdf_right = cdf(d, value);
    stat = std::max(stat, std::fabs(cdf_right - ecdf_right));
    stat = std::max(stat, std::fabs(cdf_left - ecdf_left));
    i = j;
  }
  return stat;
}

}  // namespace

TEST_CASE("cdf closed forms") {
  CHECK(cdf(Distribution::pareto11(), 2.0) == 0.5);
  CHECK(cdf(Distribution::trimodal(), 4.5) == 0.5);
  CHECK(std::fabs(cdf(Distribution::poisson(0.6), 0.0) - std::exp(-0.6)) <= 1e-14);
  CHECK(cdf(Distribution::pareto11(), 0.5) == 0.0);
  CHECK(std::fabs(cdf(Distribution::exponential1(), std::numbers::ln2) - 0.5) <= 1e-15);
  CHECK(cdf(Distribution::uniform01(), -1.0) == 0.0);
  CHECK(cdf(Distribution::uniform01(), 0.25) == 0.25);
  CHECK(cdf(Distribution::uniform01(), 2.0) == 1.0);
  CHECK(std::fabs(cdf(Distribution::normal(2, 3), 2.0) - 0.5) <= 1e-15);
  CHECK_THROWS_AS(cdf(Distribution::uniform01(), std::nan("")), std::domain_error);
}

TEST_CASE("trimodal cdf matches the nine-case table") {
  const Distribution tri = Distribution::trimodal();
  const std::pair<double, double> probes[] = {
      {-1.0, 0.0}, {0.5, 0.125}, {2.0, 0.25},  {4.2, 0.35}, {4.5, 0.5},
      {4.8, 0.65}, {6.0, 0.75},  {8.5, 0.875}, {10.0, 1.0},
  };
  for (const auto& [x, expected] : probes) {
    CHECK(std::fabs(cdf(tri, x) - expected) <= 1e-15);
  }
}

TEST_CASE("true_median per family") {
  CHECK(std::fabs(true_median(Distribution::exponential1()) - 0.6931471805599453) <= 1e-15);
  CHECK(true_median(Distribution::uniform01()) == 0.5);
  CHECK(true_median(Distribution::poisson(0.6)) == 0.0);
  CHECK(true_median(Distribution::poisson(10.0)) == 10.0);
  CHECK(true_median(Distribution::normal(-3, 2)) == -3.0);
  CHECK(true_median(Distribution::pareto11()) == 2.0);
  CHECK(true_median(Distribution::trimodal()) == 4.5);
}

TEST_CASE("quantile closed forms and edge cases") {
  CHECK(quantile(Distribution::uniform01(), 0.25) == 0.25);
  CHECK(std::fabs(quantile(Distribution::pareto11(), 0.5) - 2.0) <= 1e-15);
  CHECK(quantile(Distribution::trimodal(), 0.75) == 5.0);
  CHECK_THROWS_AS(quantile(Distribution::uniform01(), 0.0), std::domain_error);
  CHECK_THROWS_AS(quantile(Distribution::uniform01(), 1.0), std::domain_error);
  CHECK(quantile(Distribution::poisson(0.6), 1.0) >= 0.0);  // Poisson admits p = 1
}

TEST_CASE("quantile is the generalized inverse of cdf") {
  for (const auto& d : all_families()) {
    for (int i = 1; i < 100; ++i) {
      const double p = i / 100.0;
      const double q = quantile(d, p);
      CHECK(cdf(d, q) >= p - 1e-12);
      if (d.kind() != DistributionKind::kPoisson) {
        const double eps = 1e-9 * std::max(1.0, std::fabs(q));
        if (p > 1e-6) {
          CHECK(cdf(d, q - eps) < p);
        }
        CHECK(std::fabs(cdf(d, q) - p) <= 1e-9);  // continuity points round-trip
      }
    }
  }
  // Poisson: the quantile of an attained CDF level is the attaining integer.
  const Distribution pois = Distribution::poisson(2.5);
  for (int k = 0; k <= 12; ++k) {
    CHECK(quantile(pois, cdf(pois, k)) == static_cast<double>(k));
  }
}

TEST_CASE("sampling is deterministic per (seed, stream)") {
  const Distribution d = Distribution::uniform01();
  RngStream a(42, 0), b(42, 0), c(42, 1), e(43, 0);
  const Sample sa = sample(d, a, 5);
  const Sample sb = sample(d, b, 5);
  const Sample sc = sample(d, c, 5);
  const Sample se = sample(d, e, 5);
  CHECK(std::equal(sa.values().begin(), sa.values().end(), sb.values().begin()));
  CHECK(!std::equal(sa.values().begin(), sa.values().end(), sc.values().begin()));
  CHECK(!std::equal(sa.values().begin(), sa.values().end(), se.values().begin()));
}

TEST_CASE("normal sampling mean converges") {
  RngStream rng(7, 0);
  std::vector<double> buffer(1000000);
  sample_into(Distribution::normal(0, 1), rng, buffer);
  double mean = 0.0;
  for (double v : buffer) mean += v;
  mean /= static_cast<double>(buffer.size());
  CHECK(std::fabs(mean) <= 4e-3);
}

TEST_CASE("trimodal sampling respects mode weights") {
  RngStream rng(11, 0);
  std::vector<double> buffer(1000000);
  sample_into(Distribution::trimodal(), rng, buffer);
  std::size_t middle = 0;
  for (double v : buffer) {
    CHECK(v >= 0.0);
    CHECK(v <= 9.0);
    if (v >= 4.0 && v <= 5.0) ++middle;
  }
  const double fraction = static_cast<double>(middle) / static_cast<double>(buffer.size());
  CHECK(std::fabs(fraction - 0.5) <= 0.002);
}

TEST_CASE("empirical CDF converges for every family") {
  std::uint64_t stream = 0;
  for (const auto& d : all_families()) {
    RngStream rng(1234, stream++);
    std::vector<double> buffer(100000);
    sample_into(d, rng, buffer);
    std::sort(buffer.begin(), buffer.end());
    CHECK(ks_statistic(d, buffer) <= 0.006);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Distribution::normal(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::normal(0, -1), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::poisson(0), std::invalid_argument);
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample(Distribution::uniform01(), rng, 0), std::invalid_argument);
}
