#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "sdg/coalition_solver.hpp"

namespace sdg {

/// Characteristic function indexed by coalition bitmask (bit i-1 <-> node i).
class GameTable {
 public:
  GameTable() = default;
  GameTable(int n, std::vector<double> values, std::vector<DischargePlan> plans = {});

  // Builds a table from explicit values; values[mask], values[0] must be 0.
  static GameTable from_values(int n, std::vector<double> values);

  int n() const { return n_; }
  std::uint64_t grand_mask() const { return (std::uint64_t{1} << n_) - 1; }
  double value(std::uint64_t mask) const { return values_.at(mask); }
  double value(const Coalition& s) const { return value(s.mask()); }
  double grand_value() const { return value(grand_mask()); }
  bool has_plans() const { return !plans_.empty(); }
  const DischargePlan& plan(std::uint64_t mask) const { return plans_.at(mask); }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<double> values_;
  std::vector<DischargePlan> plans_;
};

inline constexpr int kDefaultTableCap = 16;
inline constexpr int kMaxTableCap = 24;

GameTable build_table(const CoalitionSolver& solver, int n_cap = kDefaultTableCap);
GameTable build_table_serial(const CoalitionSolver& solver, int n_cap = kDefaultTableCap);

struct CooperationLedger {
  Coalition coalition;
  std::vector<Coalition> chain;  // {S1,S2} ⊂ ... ⊂ S
  // Δ_{i1,i2} for i1 ∈ S, i1 < i2 <= tail(S); zero entries included.
  std::map<std::pair<int, int>, double> delta;
  // Per downstream node i2: the discharge increment x^S - x^{prior} at the step
  // where i2's transfers were last updated, and the inflow Σ K_{i1}^{i2-1} Δ.
  std::map<int, double> increment;
  std::map<int, double> weighted_inflow;

  double at(int i1, int i2) const;
};

CooperationLedger cooperation_quantities(const CoalitionSolver& solver, const Coalition& s);

std::vector<int> free_riders(const CoalitionSolver& solver, const Coalition& s);
std::vector<int> free_riders(const CoalitionSolution& solution, const CoalitionSolver& solver);

struct Prop3Report {
  bool holds = false;
  double lhs = 0.0;  // v(S) + Σ_{gap} f_i(u_i)
  double rhs = 0.0;  // v(S ∪ gap)
  double gain = 0.0; // v(S) - v(S1) - v(S2)
};

// Requires s1 ≺ s2 (every member of s1 upstream of every member of s2).
Prop3Report check_prop3(const CoalitionSolver& solver, const Coalition& s1, const Coalition& s2);

struct PairViolation {
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  double lhs = 0.0;  // v(S) + v(T)
  double rhs = 0.0;  // v(S∪T) + v(S∩T)
  double gap = 0.0;  // lhs - rhs
};

struct PairCheckReport {
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  std::vector<PairViolation> violations;  // sorted by gap, largest first
};

// permutation[i-1] = π(i), the position of player i. Empty means identity.
using Permutation = std::vector<int>;
Permutation identity_permutation(int n);
void check_permutation(const Permutation& pi, int n);

PairCheckReport check_directional_convexity(const GameTable& table, const Permutation& pi = {});
PairCheckReport check_directional_convexity_serial(const GameTable& table, const Permutation& pi = {});
PairCheckReport check_convexity(const GameTable& table);
PairCheckReport check_superadditivity(const GameTable& table);

// Whether the ordered pair (S,T) is subject to the directional-convexity inequality.
bool directional_pair(std::uint64_t s, std::uint64_t t, const Permutation& pi);

}  // namespace sdg
