#include "qad/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qad/specfun.hpp"

namespace robust {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double poisson_pmf(double lambda, std::int64_t k) {
  return std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

double poisson_cdf(double lambda, double x) {
  if (x < 0.0) return 0.0;
  const auto top = static_cast<std::int64_t>(std::floor(x));
  double cum = 0.0;
  for (std::int64_t k = 0; k <= top; ++k) {
    cum += poisson_pmf(lambda, k);
  }
  return std::min(cum, 1.0);
}

std::int64_t poisson_quantile(double lambda, double p) {
  std::int64_t k = 0;
  double cum = poisson_pmf(lambda, 0);
  while (cum < p) {
    ++k;
    const double term = poisson_pmf(lambda, k);
    cum += term;
    // The cumulative sum saturates below 1 once terms underflow; treat the
    // numerical top of the support as attained.
    if (term < 1e-320 && static_cast<double>(k) > lambda) break;
  }
  return k;
}

double trimodal_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 1.0) return 0.25 * x;
  if (x <= 4.0) return 0.25;
  if (x < 5.0) return 0.25 + 0.5 * (x - 4.0);
  if (x <= 8.0) return 0.75;
  if (x < 9.0) return 0.75 + 0.25 * (x - 8.0);
  return 1.0;
}

double trimodal_quantile(double p) {
  if (p <= 0.25) return 4.0 * p;
  if (p <= 0.75) return 4.0 + 2.0 * (p - 0.25);
  return 8.0 + 4.0 * (p - 0.75);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : state_(mix64(mix64(seed + kGoldenGamma) + stream_id * kGoldenGamma)) {}

std::uint64_t RngStream::next_u64() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double RngStream::next_unit_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

Distribution Distribution::normal(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw std::invalid_argument("Distribution::normal: sigma must be positive and finite");
  }
  return {DistributionKind::kNormal, mu, sigma, 1.0};
}
Distribution Distribution::uniform01() { return {DistributionKind::kUniform01, 0, 1, 1}; }
Distribution Distribution::exponential1() { return {DistributionKind::kExponential1, 0, 1, 1}; }
Distribution Distribution::pareto11() { return {DistributionKind::kPareto11, 0, 1, 1}; }
Distribution Distribution::trimodal() { return {DistributionKind::kTrimodal, 0, 1, 1}; }
Distribution Distribution::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("Distribution::poisson: lambda must be positive and finite");
  }
  return {DistributionKind::kPoisson, 0, 1, lambda};
}

double cdf(const Distribution& d, double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("cdf: non-finite argument");
  }
  switch (d.kind()) {
    case DistributionKind::kNormal:
      return normal_cdf((x - d.mu()) / d.sigma());
    case DistributionKind::kUniform01:
      return std::clamp(x, 0.0, 1.0);
    case DistributionKind::kExponential1:
      return x <= 0.0 ? 0.0 : -std::expm1(-x);
    case DistributionKind::kPareto11:
      return x <= 1.0 ? 0.0 : 1.0 - 1.0 / x;
    case DistributionKind::kTrimodal:
      return trimodal_cdf(x);
    case DistributionKind::kPoisson:
      return poisson_cdf(d.lambda(), x);
  }
  throw std::logic_error("cdf: unknown distribution kind");
}

double true_median(const Distribution& d) {
  switch (d.kind()) {
    case DistributionKind::kNormal:
      return d.mu();
    case DistributionKind::kUniform01:
      return 0.5;
    case DistributionKind::kExponential1:
      return std::numbers::ln2;
    case DistributionKind::kPareto11:
      return 2.0;
    case DistributionKind::kTrimodal:
      return 4.5;
    case DistributionKind::kPoisson:
      return static_cast<double>(poisson_quantile(d.lambda(), 0.5));
  }
  throw std::logic_error("true_median: unknown distribution kind");
}

double quantile(const Distribution& d, double p) {
  const bool poisson = d.kind() == DistributionKind::kPoisson;
  if (!(p > 0.0) || (poisson ? !(p <= 1.0) : !(p < 1.0))) {
    throw std::domain_error("quantile: order out of range");
  }
  switch (d.kind()) {
    case DistributionKind::kNormal:
      return d.mu() + d.sigma() * normal_quantile(p);
    case DistributionKind::kUniform01:
      return p;
    case DistributionKind::kExponential1:
      return -std::log1p(-p);
    case DistributionKind::kPareto11:
      return 1.0 / (1.0 - p);
    case DistributionKind::kTrimodal:
      return trimodal_quantile(p);
    case DistributionKind::kPoisson:
      return static_cast<double>(poisson_quantile(d.lambda(), p));
  }
  throw std::logic_error("quantile: unknown distribution kind");
}

void sample_into(const Distribution& d, RngStream& rng, std::span<double> out) {
  switch (d.kind()) {
    case DistributionKind::kNormal: {
      const double mu = d.mu();
      const double sigma = d.sigma();
      for (double& v : out) v = mu + sigma * normal_quantile(rng.next_unit_open());
      return;
    }
    case DistributionKind::kUniform01:
      for (double& v : out) v = rng.next_unit_open();
      return;
    case DistributionKind::kExponential1:
      for (double& v : out) v = -std::log1p(-rng.next_unit_open());
      return;
    case DistributionKind::kPareto11:
      for (double& v : out) v = 1.0 / (1.0 - rng.next_unit_open());
      return;
    case DistributionKind::kTrimodal:
      for (double& v : out) {
        const double mode = rng.next_unit_open();
        const double offset = rng.next_unit_open();
        if (mode < 0.25) {
          v = offset;
        } else if (mode < 0.75) {
          v = 4.0 + offset;
        } else {
          v = 8.0 + offset;
        }
      }
      return;
    case DistributionKind::kPoisson: {
      const double lambda = d.lambda();
      for (double& v : out) {
        v = static_cast<double>(poisson_quantile(lambda, rng.next_unit_open()));
      }
      return;
    }
  }
  throw std::logic_error("sample_into: unknown distribution kind");
}

Sample sample(const Distribution& d, RngStream& rng, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("sample: n must be positive");
  }
  std::vector<double> values(n);
  sample_into(d, rng, values);
  return Sample(std::move(values));
}

}  // namespace robust
