#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sdg/instance.hpp"

namespace sdg {

// How a node of the span takes part in a layer-by-layer solve.
enum class NodeRole {
  free,      // member whose profit is maximised
  fixed,     // pinned discharge, frozen from the start
  priority,  // non-member that fills before any member (outranks every AMB)
};

struct SubProblem {
  Interval span;
  double start_level = 0.0;
  std::vector<NodeRole> roles;   // per span offset
  std::vector<double> lower;     // per span offset
  std::vector<double> upper;     // per span offset
  std::vector<double> fixed;     // value for NodeRole::fixed, ignored otherwise

  // All nodes free with bounds [a, u].
  static SubProblem consecutive(const Instance& inst, double start_level, Interval span);
};

struct LliIteration {
  std::vector<int> layer;  // I*
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
  double step = 0.0;  // Δ along the parameterisation
  std::vector<int> frozen;  // nodes frozen by this iteration
  std::vector<double> x;    // span discharges after the iteration
};

struct LliResult {
  DischargePlan plan;
  int iterations = 0;
  std::vector<LliIteration> trace;
};

// Adaptive marginal benefit K_1^i f'_i(x).
double amb(int i, double x, const Instance& inst);

// Runs the layer-by-layer incremental greedy on a sub-problem. Throws
// Error(InfeasibleBaseline) when the starting point violates a tolerance.
LliResult run_lli(const Instance& inst, const SubProblem& problem, bool record_trace = false);

struct SdpSolution {
  DischargePlan plan;
  double value = 0.0;
  int iterations = 0;
  std::vector<LliIteration> trace;
};

SdpSolution solve_sdp(const Instance& inst, double start_level, Interval span,
                      bool record_trace = false);
SdpSolution solve_grand(const Instance& inst, bool record_trace = false);

struct OptimalityViolation {
  int node = 0;       // first node of the pair (or the node for level checks)
  int next = 0;       // second node of the pair, 0 for level checks
  std::string clause; // "level", "terminal-level", "marginal-upstream", "marginal-downstream"
  std::string detail;
};

std::vector<OptimalityViolation> verify_optimality(const DischargePlan& plan, const Instance& inst);

std::vector<int> find_decomposition_points(const DischargePlan& plan, const Instance& inst);

}  // namespace sdg
