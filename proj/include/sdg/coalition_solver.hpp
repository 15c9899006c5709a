#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sdg/hydrology.hpp"
#include "sdg/instance.hpp"
#include "sdg/lli.hpp"

namespace sdg {

struct CoalitionSolution {
  Coalition coalition;
  DischargePlan plan;   // over coalition.span(), outsiders included
  double value = 0.0;   // sum of member profits
  // Blocks solved as one priority program each, upstream to downstream.
  std::vector<Coalition> decomposition;
};

/// Sub-coalition solver bound to one instance. Caches the grand myopic profile.
class CoalitionSolver {
 public:
  explicit CoalitionSolver(Instance inst);

  const Instance& instance() const { return inst_; }
  const MyopicProfile& myopic() const { return myopic_; }

  // Pollution entering node s.head(): k_{h-1} d_{h-1} (b0 for the first node).
  double start_level(const Coalition& s) const;
  double theta(int i) const { return myopic_.theta_at(i); }
  double d(int i) const { return myopic_.d_at(i); }

  // Outsiders in the span fill before any member; only member profit is counted.
  CoalitionSolution v_prime(const Coalition& s) const;
  // Prefix-union dynamic program over the consecutive partition.
  CoalitionSolution coalition_value(const Coalition& s) const;
  // Symmetric interval recursion over the parts; cross-check reference.
  CoalitionSolution coalition_value_full_recursion(const Coalition& s) const;

  struct FixedResult {
    double value = 0.0;
    DischargePlan plan;
  };
  // Maximises member profit of s with the nodes in `fixed` pinned. Every span
  // outsider must be pinned. `caps` optionally lowers the upper bound of free nodes.
  FixedResult w_fixed(const Coalition& s, const std::map<int, double>& fixed,
                      const std::map<int, double>& caps = {}) const;

 private:
  CoalitionSolution v_prime_parts(const std::vector<Coalition>& parts, int from, int to) const;
  CoalitionSolution join(const CoalitionSolution& left, const CoalitionSolution& right) const;

  Instance inst_;
  MyopicProfile myopic_;
};

}  // namespace sdg
