#include "sdg/coalition_solver.hpp"

#include <algorithm>
#include <functional>

#include "sdg/errors.hpp"
#include "sdg/tolerance.hpp"

namespace sdg {

CoalitionSolver::CoalitionSolver(Instance inst)
    : inst_(std::move(inst)), myopic_(grand_myopic_profile(inst_)) {}

double CoalitionSolver::start_level(const Coalition& s) const {
  const int h = s.head();
  if (h == 1) return inst_.b0();
  return inst_.k(h - 1) * myopic_.d_at(h - 1);
}

CoalitionSolution CoalitionSolver::v_prime(const Coalition& s) const {
  check_coalition(s, inst_);
  return v_prime_parts({s}, 0, 0);
}

CoalitionSolution CoalitionSolver::v_prime_parts(const std::vector<Coalition>& parts, int from,
                                                 int to) const {
  Coalition s = parts[from];
  for (int m = from + 1; m <= to; ++m) s = unite(s, parts[m]);
  SubProblem prob;
  prob.span = s.span();
  prob.start_level = start_level(s);
  for (int i = prob.span.first; i <= prob.span.last; ++i) {
    prob.roles.push_back(s.contains(i) ? NodeRole::free : NodeRole::priority);
    prob.lower.push_back(inst_.a(i));
    prob.upper.push_back(inst_.u(i));
    prob.fixed.push_back(0.0);
  }
  LliResult r = run_lli(inst_, prob);
  CoalitionSolution sol;
  sol.value = plan_value(r.plan, s, inst_);
  sol.plan = std::move(r.plan);
  sol.decomposition = {s};
  sol.coalition = std::move(s);
  return sol;
}

CoalitionSolution CoalitionSolver::join(const CoalitionSolution& left,
                                        const CoalitionSolution& right) const {
  CoalitionSolution sol;
  sol.coalition = unite(left.coalition, right.coalition);
  sol.value = left.value + right.value;
  sol.plan.span = {left.plan.span.first, right.plan.span.last};
  sol.plan.start_level = left.plan.start_level;
  sol.plan.x = left.plan.x;
  for (int i = left.plan.span.last + 1; i < right.plan.span.first; ++i) sol.plan.x.push_back(theta(i));
  sol.plan.x.insert(sol.plan.x.end(), right.plan.x.begin(), right.plan.x.end());
  sol.decomposition = left.decomposition;
  sol.decomposition.insert(sol.decomposition.end(), right.decomposition.begin(),
                           right.decomposition.end());
  return sol;
}

CoalitionSolution CoalitionSolver::coalition_value(const Coalition& s) const {
  check_coalition(s, inst_);
  const std::vector<Coalition> parts = consecutive_partition(s);
  const int l = static_cast<int>(parts.size());
  std::vector<CoalitionSolution> best;
  best.reserve(static_cast<std::size_t>(l));
  for (int m = 0; m < l; ++m) {
    CoalitionSolution cur = v_prime_parts(parts, 0, m);
    for (int m1 = 1; m1 <= m; ++m1) {
      const CoalitionSolution suffix = v_prime_parts(parts, m1, m);
      if (best[m1 - 1].value + suffix.value > cur.value) cur = join(best[m1 - 1], suffix);
    }
    best.push_back(std::move(cur));
  }
  return best.back();
}

CoalitionSolution CoalitionSolver::coalition_value_full_recursion(const Coalition& s) const {
  check_coalition(s, inst_);
  const std::vector<Coalition> parts = consecutive_partition(s);
  const int l = static_cast<int>(parts.size());
  std::vector<std::vector<std::optional<CoalitionSolution>>> memo(
      static_cast<std::size_t>(l), std::vector<std::optional<CoalitionSolution>>(static_cast<std::size_t>(l)));
  std::function<const CoalitionSolution&(int, int)> solve = [&](int a, int b) -> const CoalitionSolution& {
    auto& slot = memo[a][b];
    if (slot) return *slot;
    CoalitionSolution cur = v_prime_parts(parts, a, b);
    for (int m1 = a; m1 < b; ++m1) {
      const CoalitionSolution& lhs = solve(a, m1);
      const CoalitionSolution& rhs = solve(m1 + 1, b);
      if (lhs.value + rhs.value > cur.value) cur = join(lhs, rhs);
    }
    slot = std::move(cur);
    return *slot;
  };
  return solve(0, l - 1);
}

CoalitionSolver::FixedResult CoalitionSolver::w_fixed(const Coalition& s,
                                                      const std::map<int, double>& fixed,
                                                      const std::map<int, double>& caps) const {
  check_coalition(s, inst_);
  const Interval span = s.span();
  for (const auto& [i, v] : fixed) {
    if (!span.contains(i))
      throw Error(errc::kIndexOutOfRange, "fixed node " + std::to_string(i) + " outside the span");
    (void)v;
  }
  SubProblem prob;
  prob.span = span;
  prob.start_level = start_level(s);
  for (int i = span.first; i <= span.last; ++i) {
    auto pin = fixed.find(i);
    if (pin != fixed.end()) {
      prob.roles.push_back(NodeRole::fixed);
      prob.fixed.push_back(pin->second);
      prob.lower.push_back(pin->second);
      prob.upper.push_back(pin->second);
      continue;
    }
    if (!s.contains(i))
      throw Error(errc::kPreconditionNotMet,
                  "outside node " + std::to_string(i) + " must be given a fixed discharge");
    double upper = inst_.u(i);
    if (auto cap = caps.find(i); cap != caps.end()) upper = std::clamp(cap->second, inst_.a(i), upper);
    prob.roles.push_back(NodeRole::free);
    prob.fixed.push_back(0.0);
    prob.lower.push_back(inst_.a(i));
    prob.upper.push_back(upper);
  }
  LliResult r;
  try {
    r = run_lli(inst_, prob);
  } catch (const Error& e) {
    if (e.code() == errc::kInfeasibleBaseline) throw Error(errc::kInfeasibleFixedAssignment, e.what());
    throw;
  }
  FixedResult out;
  out.value = plan_value(r.plan, s, inst_);
  out.plan = std::move(r.plan);
  return out;
}

}  // namespace sdg
