#pragma once

#include <cstdint>
#include <span>

#include "qad/quantile.hpp"

namespace robust {

// Deterministic counter-based random stream (SplitMix64). Identical
// (seed, stream_id) pairs reproduce the same variate sequence on every
// platform. Streams are single-owner: create one per worker, never share.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  // Uniform double strictly inside (0, 1), 53-bit resolution.
  double next_unit_open();

 private:
  std::uint64_t state_;
};

enum class DistributionKind {
  kNormal,
  kUniform01,
  kExponential1,
  kPareto11,
  kTrimodal,
  kPoisson,
};

// Reference distribution for asymptotic formulas and Monte-Carlo sampling:
// Normal(mu, sigma), U(0,1), Exp(1), Pareto(1,1), the fixed trimodal mixture
// (uniform on [0,1] w.p. 1/4, on [4,5] w.p. 1/2, on [8,9] w.p. 1/4), and
// Poisson(lambda). Immutable value type.
class Distribution {
 public:
  static Distribution normal(double mu, double sigma);
  static Distribution uniform01();
  static Distribution exponential1();
  static Distribution pareto11();
  static Distribution trimodal();
  static Distribution poisson(double lambda);

  DistributionKind kind() const { return kind_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  double lambda() const { return lambda_; }

 private:
  Distribution(DistributionKind kind, double mu, double sigma, double lambda)
      : kind_(kind), mu_(mu), sigma_(sigma), lambda_(lambda) {}

  DistributionKind kind_;
  double mu_ = 0.0;
  double sigma_ = 1.0;
  double lambda_ = 1.0;
};

// Right-continuous CDF, exact closed form per family.
double cdf(const Distribution& d, double x);

// Population median: Normal -> mu, U(0,1) -> 1/2, Exp(1) -> ln 2,
// Pareto(1,1) -> 2, trimodal -> 4.5, Poisson -> smallest k with CDF >= 1/2.
double true_median(const Distribution& d);

// Generalized inverse CDF: smallest x with cdf(x) >= p. Continuous families
// accept p in (0, 1); Poisson accepts p in (0, 1].
double quantile(const Distribution& d, double p);

// n i.i.d. variates, deterministic given the stream. Continuous families use
// the inverse CDF (trimodal by mode composition), Poisson by inversion.
Sample sample(const Distribution& d, RngStream& rng, std::size_t n);

// Allocation-free sampling into a caller-provided buffer.
void sample_into(const Distribution& d, RngStream& rng, std::span<double> out);

}  // namespace robust
