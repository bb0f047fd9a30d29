#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "qad/constants.hpp"
#include "qad/quantile.hpp"

namespace robust {

enum class DispersionEstimator { kMad, kSqad, kOqad, kQad };

struct DispersionEstimate {
  double value = 0.0;              // nonnegative
  DispersionEstimator estimator = DispersionEstimator::kQad;
  double p = 0.5;                  // quantile order actually used
  std::size_t n = 0;
  double constant = 1.0;           // multiplier that was applied
};

// Thrown when sqad/oqad are asked for a default consistency constant at a
// sample size the table does not define (n == 1).
class undefined_constant_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quantile absolute deviation around the median:
// constant * HF7-quantile(|x - median(x)|, p). Location-invariant,
// scale-equivariant. Requires 0 <= p <= 1 and constant > 0.
DispersionEstimate qad(const Sample& x, double p, double constant = 1.0);

// Median absolute deviation, the p = 0.5 special case. The default constant
// is the conventional asymptotic normal-consistency factor.
DispersionEstimate mad(const Sample& x, double constant = kMadConstant);

// Standard / optimal QAD with finite-sample consistency constants. When
// `constant` is omitted it is looked up for n <= 100 and extrapolated
// beyond; n == 1 has no defined default and raises undefined_constant_error.
DispersionEstimate sqad(const Sample& x, std::optional<double> constant = std::nullopt);
DispersionEstimate oqad(const Sample& x, std::optional<double> constant = std::nullopt);

// Finite-sample consistency constant for kSqad/kOqad: table lookup for
// 2 <= n <= 100, asymptotic extrapolation K_inf(1 + alpha/n + beta/n^2)
// above. Throws std::domain_error for n < 2.
double consistency_constant(DispersionEstimator estimator, std::size_t n);

// The full correction-factor data behind consistency_constant, exposed for
// auditability: the embedded n = 2..100 table (index 0 holds n = 2) plus
// the extrapolation coefficients used above n = 100.
struct ConsistencyConstants {
  DispersionEstimator estimator = DispersionEstimator::kSqad;
  std::span<const double> table;
  double k_infinity = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  double at(std::size_t n) const;
};
ConsistencyConstants consistency_constants(DispersionEstimator estimator);

// Shorthands for the two embedded tables.
std::span<const double> sqad_constant_table();
std::span<const double> oqad_constant_table();

}  // namespace robust
