#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qad/quantile.hpp"

namespace robust {

// Seeded Monte-Carlo run description. Repetitions are split into `workers`
// contiguous blocks; block i draws from RngStream(master_seed, i) and the
// block results are merged in index order, so output depends only on the
// configuration, never on thread scheduling.
struct SimulationConfig {
  std::vector<int> sample_sizes;
  std::int64_t repetitions = 100000;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

struct ConstantRecord {
  int n = 0;
  double k_sqad = 0.0;
  double k_oqad = 0.0;
  std::int64_t reps_used = 0;
};

struct EfficiencyRecord {
  int n = 0;
  std::string baseline;
  std::vector<std::pair<std::string, double>> values;
};

struct FitResult {
  double k_infinity = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double max_residual = 0.0;
};

// One-pass mean/variance accumulator (Welford recurrence) with an exact
// pairwise merge; the building block of every simulation below.
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);

  std::int64_t count() const { return count_; }
  double mean() const;
  double variance() const;  // sample variance, divisor n - 1

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Sample standard deviation with divisor n - 1, divided by c4(n) so the
// estimator is unbiased for sigma under normality. Requires n >= 2.
double unbiased_sd(const Sample& x);

// Standardized variance of a scale estimator, n * V[T] / E[T]^2, from a
// collection of realized estimates. Requires a nonzero mean.
double standardized_variance(std::span<const double> values, std::int64_t n);

// Simulation of the finite-sample consistency constants: for each n, the
// reciprocal mean of the raw QAD at rho_s and rho_o over standard-normal
// samples.
std::vector<ConstantRecord> simulate_constants(const SimulationConfig& cfg);

// Finite-sample Gaussian efficiency of MAD/SQAD/OQAD (bias-corrected)
// relative to the unbiased standard deviation, standardized-variance ratio.
std::vector<EfficiencyRecord> simulate_scale_efficiency(const SimulationConfig& cfg);

// Finite-sample Gaussian efficiency of the sample median, STHDME and OTHDME
// relative to the mean, plain variance ratio.
std::vector<EfficiencyRecord> simulate_location_efficiency(const SimulationConfig& cfg);

// Least squares of (K_n / K_inf - 1) against [1/n, 1/n^2] over records with
// n_min <= n <= n_max (at least three required). Returns alpha, beta and the
// largest |K_n - K_inf(1 + alpha/n + beta/n^2)| over the fit range.
FitResult fit_constant_model(const std::vector<std::pair<int, double>>& records,
                             double k_infinity, int n_min, int n_max);

}  // namespace robust
