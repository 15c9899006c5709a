#pragma once

namespace sdg::tol {

// Absolute tolerance on pollution levels and discharges.
inline constexpr double kPollution = 1e-9;
// Relative tolerance used when grouping equal adaptive marginal benefits.
inline constexpr double kAmbRelative = 1e-9;
// Absolute tolerance on characteristic values and allocation sums.
inline constexpr double kValue = 1e-9;

}  // namespace sdg::tol
