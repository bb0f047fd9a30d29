#pragma once

namespace robust {

// Quantile order of the standard QAD: the one-sigma coverage of the normal
// distribution, Phi(1) - Phi(-1).
inline constexpr double kRhoS = 0.682689492137086;

// Quantile order of the optimal QAD: the argmax of the asymptotic Gaussian
// efficiency of QAD(X, p), obtained numerically.
inline constexpr double kRhoO = 0.861678977787423;

// Asymptotic scale constant of the MAD, 1 / Phi^-1(0.75), as conventionally
// rounded. The exact value is exposed by asymptotic_constant(0.5).
inline constexpr double kMadConstant = 1.482602;

// Asymptotic consistency constant of the OQAD, 1 / Phi^-1((kRhoO + 1) / 2).
inline constexpr double kOqadAsymptoticConstant = 0.6747309;

}  // namespace robust
