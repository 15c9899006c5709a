#pragma once

#include <vector>

#include "sdg/instance.hpp"

namespace sdg {

struct MyopicProfile {
  Interval span;
  double start_level = 0.0;
  std::vector<double> d;      // d[i - span.first]
  std::vector<double> theta;  // theta[i - span.first]

  double d_at(int i) const { return d.at(static_cast<std::size_t>(i - span.first)); }
  double theta_at(int i) const { return theta.at(static_cast<std::size_t>(i - span.first)); }
};

// K_{i1}^{i2} = prod_{i=i1}^{i2-1} k_i, with 0 <= i1 <= i2 <= n.
double residual_rate(int i1, int i2, const Instance& inst);

// start_level is the pollution entering span.first before its discharge
// (for the full river: b0, since k_0 = 1).
MyopicProfile myopic_profile(const Instance& inst, double start_level, Interval span);
MyopicProfile grand_myopic_profile(const Instance& inst);

std::vector<double> pollution_profile(const DischargePlan& plan, const Instance& inst);
// Closed-form sum; kept for cross-checking the recursion.
std::vector<double> pollution_profile_closed_form(const DischargePlan& plan, const Instance& inst);

DischargePlan myopic_plan(const MyopicProfile& profile);

}  // namespace sdg
