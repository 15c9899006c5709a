#include "sdg/game.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <limits>

#include "sdg/errors.hpp"
#include "sdg/tolerance.hpp"

namespace sdg {

GameTable::GameTable(int n, std::vector<double> values, std::vector<DischargePlan> plans)
    : n_(n), values_(std::move(values)), plans_(std::move(plans)) {
  if (n_ < 1 || n_ > kMaxTableCap) throw Error(errc::kInstanceTooLarge, "table size " + std::to_string(n_));
  if (values_.size() != (std::size_t{1} << n_))
    throw Error(errc::kInternal, "table must hold 2^n entries");
}

GameTable GameTable::from_values(int n, std::vector<double> values) {
  return GameTable(n, std::move(values));
}

namespace {

void check_cap(int n, int n_cap) {
  const int cap = std::min(n_cap, kMaxTableCap);
  if (n > cap)
    throw Error(errc::kInstanceTooLarge,
                "n = " + std::to_string(n) + " exceeds the table cap " + std::to_string(cap));
}

}  // namespace

GameTable build_table_serial(const CoalitionSolver& solver, int n_cap) {
  const int n = solver.instance().n();
  check_cap(n, n_cap);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> values(size, 0.0);
  std::vector<DischargePlan> plans(size);
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    CoalitionSolution sol = solver.coalition_value(Coalition::from_mask(mask));
    values[mask] = sol.value;
    plans[mask] = std::move(sol.plan);
  }
  return GameTable(n, std::move(values), std::move(plans));
}

GameTable build_table(const CoalitionSolver& solver, int n_cap) {
  const int n = solver.instance().n();
  check_cap(n, n_cap);
  const auto size = static_cast<long long>(std::uint64_t{1} << n);
  std::vector<double> values(static_cast<std::size_t>(size), 0.0);
  std::vector<DischargePlan> plans(static_cast<std::size_t>(size));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (long long mask = 1; mask < size; ++mask) {
    try {
      CoalitionSolution sol = solver.coalition_value(Coalition::from_mask(static_cast<std::uint64_t>(mask)));
      values[static_cast<std::size_t>(mask)] = sol.value;
      plans[static_cast<std::size_t>(mask)] = std::move(sol.plan);
    } catch (...) {
#pragma omp critical(sdg_table_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return GameTable(n, std::move(values), std::move(plans));
}

double CooperationLedger::at(int i1, int i2) const {
  auto it = delta.find({i1, i2});
  return it == delta.end() ? 0.0 : it->second;
}

std::vector<int> free_riders(const CoalitionSolution& solution, const CoalitionSolver& solver) {
  std::vector<int> out;
  const DischargePlan& plan = solution.plan;
  for (int i = plan.span.first; i <= plan.span.last; ++i)
    if (!solution.coalition.contains(i) && plan.at(i) > solver.theta(i) + tol::kPollution) out.push_back(i);
  return out;
}

std::vector<int> free_riders(const CoalitionSolver& solver, const Coalition& s) {
  return free_riders(solver.coalition_value(s), solver);
}

Prop3Report check_prop3(const CoalitionSolver& solver, const Coalition& s1, const Coalition& s2) {
  if (s1.empty() || s2.empty() || s1.tail() >= s2.head())
    throw Error(errc::kPreconditionNotMet, "expected S1 upstream of S2");
  const Coalition s = unite(s1, s2);
  const double vs = solver.coalition_value(s).value;
  const double v1 = solver.coalition_value(s1).value;
  const double v2 = solver.coalition_value(s2).value;
  Prop3Report rep;
  rep.gain = vs - v1 - v2;
  if (rep.gain <= tol::kValue)
    throw Error(errc::kPreconditionNotMet,
                "v(S) = " + std::to_string(vs) + " does not exceed v(S1) + v(S2) = " + std::to_string(v1 + v2));
  const Instance& inst = solver.instance();
  Coalition filled = s;
  rep.lhs = vs;
  for (int i = s1.tail() + 1; i < s2.head(); ++i) {
    rep.lhs += inst.f(i).value(inst.u(i));
    filled = filled.with(i);
  }
  rep.rhs = solver.coalition_value(filled).value;
  rep.holds = rep.lhs <= rep.rhs + tol::kValue;
  return rep;
}

Permutation identity_permutation(int n) {
  Permutation pi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pi[i] = i + 1;
  return pi;
}

void check_permutation(const Permutation& pi, int n) {
  if (static_cast<int>(pi.size()) != n) throw Error(errc::kInvalidPermutation, "wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int p : pi) {
    if (p < 1 || p > n || seen[p]) throw Error(errc::kInvalidPermutation, "not a bijection on 1..n");
    seen[p] = true;
  }
}

namespace {

struct Extent {
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  bool empty() const { return lo > hi; }
};

Extent extent(std::uint64_t mask, const Permutation& pi) {
  Extent e;
  while (mask) {
    const int bit = std::countr_zero(mask);
    mask &= mask - 1;
    const int p = pi[static_cast<std::size_t>(bit)];
    e.lo = std::min(e.lo, p);
    e.hi = std::max(e.hi, p);
  }
  return e;
}

Permutation resolve(const Permutation& pi, int n) {
  if (pi.empty()) return identity_permutation(n);
  check_permutation(pi, n);
  return pi;
}

template <class Pred>
void scan_row(const GameTable& table, std::uint64_t s, Pred&& qualifies, std::vector<PairViolation>& out,
              std::uint64_t& count) {
  const std::uint64_t size = table.grand_mask() + 1;
  const double vs = table.value(s);
  for (std::uint64_t t = 1; t < size; ++t) {
    if (t == s || !qualifies(s, t)) continue;
    ++count;
    const double lhs = vs + table.value(t);
    const double rhs = table.value(s | t) + table.value(s & t);
    if (lhs > rhs + tol::kValue) out.push_back({s, t, lhs, rhs, lhs - rhs});
  }
}

void finish(PairCheckReport& rep) {
  std::stable_sort(rep.violations.begin(), rep.violations.end(), [](const PairViolation& a, const PairViolation& b) {
    if (a.gap != b.gap) return a.gap > b.gap;
    if (a.s != b.s) return a.s < b.s;
    return a.t < b.t;
  });
  rep.holds = rep.violations.empty();
}

template <class Pred>
PairCheckReport scan_serial(const GameTable& table, Pred&& qualifies) {
  PairCheckReport rep;
  const std::uint64_t size = table.grand_mask() + 1;
  for (std::uint64_t s = 1; s < size; ++s) scan_row(table, s, qualifies, rep.violations, rep.pairs_checked);
  finish(rep);
  return rep;
}

template <class Pred>
PairCheckReport scan_parallel(const GameTable& table, Pred&& qualifies) {
  PairCheckReport rep;
  const auto size = static_cast<long long>(table.grand_mask() + 1);
  std::uint64_t total = 0;
#pragma omp parallel
  {
    std::vector<PairViolation> local;
    std::uint64_t count = 0;
#pragma omp for schedule(dynamic, 32) nowait
    for (long long s = 1; s < size; ++s)
      scan_row(table, static_cast<std::uint64_t>(s), qualifies, local, count);
#pragma omp critical(sdg_pair_merge)
    {
      rep.violations.insert(rep.violations.end(), local.begin(), local.end());
      total += count;
    }
  }
  rep.pairs_checked = total;
  finish(rep);
  return rep;
}

}  // namespace

bool directional_pair(std::uint64_t s, std::uint64_t t, const Permutation& pi) {
  const Extent common = extent(s & t, pi);
  if (common.empty()) return true;
  const Extent t_only = extent(t & ~s, pi);
  const Extent s_only = extent(s & ~t, pi);
  const bool first = t_only.empty() || t_only.lo > common.hi;
  const bool second = s_only.empty() || s_only.lo > common.lo;
  return first && second;
}

PairCheckReport check_directional_convexity(const GameTable& table, const Permutation& pi) {
  const Permutation p = resolve(pi, table.n());
  return scan_parallel(table, [&](std::uint64_t s, std::uint64_t t) { return directional_pair(s, t, p); });
}

PairCheckReport check_directional_convexity_serial(const GameTable& table, const Permutation& pi) {
  const Permutation p = resolve(pi, table.n());
  return scan_serial(table, [&](std::uint64_t s, std::uint64_t t) { return directional_pair(s, t, p); });
}

PairCheckReport check_convexity(const GameTable& table) {
  return scan_parallel(table, [](std::uint64_t s, std::uint64_t t) { return s < t; });
}

PairCheckReport check_superadditivity(const GameTable& table) {
  return scan_parallel(table, [](std::uint64_t s, std::uint64_t t) { return s < t && (s & t) == 0; });
}

}  // namespace sdg
