#pragma once

#include <vector>

namespace sdg {

struct SimplexResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  double objective = 0.0;
  std::vector<double> x;     // primal solution
  std::vector<double> duals; // one multiplier per equality row
  int pivots = 0;
};

// maximise c·x  s.t.  A x = b,  x >= 0. Rows with negative b are negated
// internally (their multipliers are reported for the original rows).
// Dense two-phase tableau, Bland's rule.
SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b, const std::vector<double>& c,
                               double pivot_tol = 1e-12);

}  // namespace sdg
