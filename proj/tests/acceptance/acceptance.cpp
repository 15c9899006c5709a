// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "random_instances.hpp"
#include "sdg/coalition_solver.hpp"
#include "sdg/core.hpp"
#include "sdg/errors.hpp"
#include "sdg/game.hpp"
#include "sdg/lli.hpp"

using namespace sdg;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int failures = 0;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (++failures <= 3) detail << (detail.tellp() > 0 ? "; " : "") << what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

void expect_plan(Outcome& out, const DischargePlan& plan, const std::vector<double>& expected, const std::string& tag) {
  if (plan.x.size() != expected.size()) {
    out.expect(false, tag + ": plan length " + std::to_string(plan.x.size()));
    return;
  }
  for (std::size_t j = 0; j < expected.size(); ++j)
    out.expect(near(plan.x[j], expected[j], 1e-6),
               tag + ": x" + std::to_string(plan.span.first + static_cast<int>(j)) + " = " + fmt(plan.x[j]) +
                   ", expected " + fmt(expected[j]));
}

void expect_delta(Outcome& out, const CooperationLedger& l, int i1, int i2, double expected) {
  const double v = l.at(i1, i2);
  out.expect(near(v, expected, 1e-6), "delta(" + std::to_string(i1) + "," + std::to_string(i2) + ") = " + fmt(v) +
                                          ", expected " + fmt(expected));
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void criterion1(Outcome& out) {
  const auto t0 = Clock::now();
  const Instance inst = testkit::three_node();
  const CoalitionSolver solver(inst);
  const std::vector<std::pair<std::vector<int>, double>> expected = {
      {{1}, 42}, {{2}, 24}, {{3}, 51}, {{1, 2}, 66}, {{1, 3}, 96}, {{2, 3}, 91}, {{1, 2, 3}, 133}};
  for (const auto& [members, v] : expected) {
    const Coalition s(members);
    const double fast = solver.coalition_value(s).value;
    const double slow = oracle::brute_force_value(s, inst).value;
    out.expect(near(fast, v, 1e-6), "v" + s.to_string() + " = " + fmt(fast));
    out.expect(near(slow, v, 1e-4), "oracle v" + s.to_string() + " = " + fmt(slow));
  }
  const double t = seconds_since(t0);
  out.expect(t < 1.0, "runtime " + fmt(t) + " s");
}

void criterion2(Outcome& out) {
  const auto t0 = Clock::now();
  const CoalitionSolver solver(testkit::nine_node(6));
  expect_plan(out, solver.coalition_value(Coalition({1, 3})).plan, {5, 5, 5}, "{1,3}");
  expect_plan(out, solver.coalition_value(Coalition({1, 3, 5})).plan, {5, 5, 5, 5, 5}, "{1,3,5}");
  expect_plan(out, solver.coalition_value(Coalition({1, 3, 5, 7})).plan, {5, 5, 3, 6, 4, 6, 6}, "{1,3,5,7}");
  expect_plan(out, solver.coalition_value(Coalition({1, 3, 5, 7, 9})).plan, {1.25, 6, 3.5, 6, 4.25, 6, 6, 6, 6},
              "{1,3,5,7,9}");
  const CooperationLedger l = cooperation_quantities(solver, Coalition({1, 3, 5, 7, 9}));
  expect_delta(out, l, 3, 4, 1);
  expect_delta(out, l, 3, 6, 1.0 / 3);
  expect_delta(out, l, 5, 6, 2.0 / 3);
  expect_delta(out, l, 3, 7, 2.0 / 3);
  expect_delta(out, l, 5, 7, 1.0 / 3);
  expect_delta(out, l, 1, 2, 1);
  expect_delta(out, l, 1, 8, 1);
  expect_delta(out, l, 1, 9, 1);
  expect_delta(out, l, 1, 3, 0.5);
  expect_delta(out, l, 1, 5, 0.25);
  const double t = seconds_since(t0);
  out.expect(t < 5.0, "runtime " + fmt(t) + " s");
}

void criterion3(Outcome& out) {
  const CoalitionSolver solver(testkit::nine_node(11));
  const Coalition s({1, 3, 5, 7, 9});
  expect_plan(out, solver.coalition_value(s).plan, {0, 6, 1, 6, 3, 6, 6, 6, 11}, "{1,3,5,7,9}");
  const CooperationLedger l = cooperation_quantities(solver, s);
  expect_delta(out, l, 1, 2, 1);
  expect_delta(out, l, 1, 8, 1);
  expect_delta(out, l, 5, 9, 1);
  expect_delta(out, l, 1, 9, 3);
  expect_delta(out, l, 3, 9, 2);
}

void criterion4(Outcome& out) {
  const GameTable table = build_table(CoalitionSolver(testkit::three_node()));
  const PairCheckReport convex = check_convexity(table);
  out.expect(!convex.holds, "convexity check passed");
  if (!convex.violations.empty()) {
    const PairViolation& w = convex.violations.front();
    const std::uint64_t s13 = Coalition({1, 3}).mask(), s23 = Coalition({2, 3}).mask();
    const bool pair_ok = (w.s == s13 && w.t == s23) || (w.s == s23 && w.t == s13);
    out.expect(pair_ok, "witness " + Coalition::from_mask(w.s).to_string() + "," + Coalition::from_mask(w.t).to_string());
    out.expect(near(w.gap, 3, 1e-6) && near(w.lhs, 187, 1e-6) && near(w.rhs, 184, 1e-6),
               "witness gap " + fmt(w.gap) + " (" + fmt(w.lhs) + " vs " + fmt(w.rhs) + ")");
  }
  const PairCheckReport directional = check_directional_convexity(table, identity_permutation(3));
  out.expect(directional.holds, "directional convexity fails");
}

void criterion5(Outcome& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5005);
  testkit::RandomSpec spec;
  spec.max_n = 7;
  spec.k_min = 0.5;
  spec.k_max = 1.0;
  for (int rep = 0; rep < 200; ++rep) {
    const GameTable table = build_table(CoalitionSolver(testkit::random_instance(rng, spec)));
    const CoreReport rep_core = core_membership(downstream_incremental(table), table);
    out.expect(rep_core.member, "instance " + std::to_string(rep) + ": downstream incremental not in core");
    const double eps = least_core(table).epsilon;
    out.expect(eps <= 1e-9, "instance " + std::to_string(rep) + ": least-core epsilon " + fmt(eps));
  }
  const double t = seconds_since(t0);
  out.expect(t < 120.0, "runtime " + fmt(t) + " s");
}

void criterion6(Outcome& out) {
  std::mt19937_64 rng(6006);
  std::exponential_distribution<double> expo(1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const GameTable table = build_table(CoalitionSolver(testkit::random_instance(rng)));
    const std::string tag = "instance " + std::to_string(rep);
    if (table.n() < 2) {
      out.expect(core_membership(downstream_incremental(table), table).member, tag + ": singleton allocation");
      continue;
    }
    const std::vector<Allocation> vertices = all_psi_vertices(table);
    for (const Allocation& a : vertices) out.expect(core_membership(a, table).member, tag + ": vertex outside core");
    for (int c = 0; c < 10; ++c) {
      std::vector<double> w(vertices.size());
      double total = 0.0;
      for (double& x : w) total += (x = expo(rng));
      Allocation mix;
      mix.payoffs.assign(static_cast<std::size_t>(table.n()), 0.0);
      for (std::size_t v = 0; v < vertices.size(); ++v)
        for (std::size_t i = 0; i < mix.payoffs.size(); ++i) mix.payoffs[i] += w[v] / total * vertices[v].payoffs[i];
      out.expect(core_membership(mix, table).member, tag + ": convex combination outside core");
    }
  }
}

void criterion7(Outcome& out) {
  std::mt19937_64 rng(7007);
  double worst = 0.0;
  for (int rep = 0; rep < 300; ++rep) {
    const Instance inst = testkit::random_instance(rng);
    const CoalitionSolver solver(inst);
    for (int c = 0; c < 20; ++c) {
      const Coalition s = testkit::random_coalition(rng, inst.n());
      const double fast = solver.coalition_value(s).value;
      const double slow = oracle::brute_force_value(s, inst).value;
      worst = std::max(worst, std::fabs(fast - slow));
      out.expect(near(fast, slow, 1e-4), "instance " + std::to_string(rep) + " S=" + s.to_string() + ": " +
                                              fmt(fast) + " vs oracle " + fmt(slow));
    }
  }
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << "max |diff| " << fmt(worst);
}

// Optimality checks on grand solves and on sub-span solves from myopic start
// levels; the per-solve iteration bound is collected for criterion 10.
int g_iteration_violations = 0;
int g_solves = 0;

void criterion8(Outcome& out) {
  std::mt19937_64 rng(8008);
  testkit::RandomSpec spec;
  spec.max_n = 12;
  for (int rep = 0; rep < 300; ++rep) {
    const Instance inst = testkit::random_instance(rng, spec);
    const CoalitionSolver solver(inst);
    std::uniform_int_distribution<int> pick(1, inst.n());
    std::vector<Interval> spans = {{1, inst.n()}};
    for (int t = 0; t < 4; ++t) {
      int a = pick(rng), b = pick(rng);
      if (a > b) std::swap(a, b);
      spans.push_back({a, b});
    }
    for (const Interval& span : spans) {
      const double start = solver.start_level(Coalition::interval(span.first, span.last));
      const SdpSolution sol = solve_sdp(inst, start, span);
      ++g_solves;
      if (sol.iterations > 2 * span.size()) ++g_iteration_violations;
      const auto violations = verify_optimality(sol.plan, inst);
      std::string what = "instance " + std::to_string(rep) + " span [" + std::to_string(span.first) + ":" +
                         std::to_string(span.last) + "]";
      if (!violations.empty()) what += ": " + violations.front().clause + " " + violations.front().detail;
      out.expect(violations.empty(), what);
    }
  }
}

void criterion9(Outcome& out) {
  int superadditive = 0, stable = 0, persistent = 0, bounded = 0, positional = 0, directional = 0;
  int persistent_cases = 0, positional_cases = 0;

  std::mt19937_64 rng(9009);
  for (int rep = 0; rep < 120; ++rep) {
    const Instance inst = testkit::random_instance(rng);
    const CoalitionSolver solver(inst);
    const GameTable table = build_table(solver);
    const int n = inst.n();
    const std::string tag = "instance " + std::to_string(rep);

    if (!check_superadditivity(table).holds) ++superadditive, out.expect(false, tag + ": superadditivity");
    if (!check_directional_convexity(table).holds) ++directional, out.expect(false, tag + ": directional convexity");

    // S1 ≺ S2: every member of S1 upstream of every member of S2.
    for (std::uint64_t m1 = 1; m1 <= table.grand_mask(); ++m1) {
      const Coalition s1 = Coalition::from_mask(m1);
      for (std::uint64_t m2 = 1; m2 <= table.grand_mask(); ++m2) {
        if (m1 & m2) continue;
        const Coalition s2 = Coalition::from_mask(m2);
        if (s1.tail() >= s2.head()) continue;
        double bound = table.value(m1);
        for (int i : s2.members()) bound += inst.f(i).value(inst.u(i));
        if (table.value(m1 | m2) > bound + 1e-9) ++bounded, out.expect(false, tag + ": upstream-bound violated");

        if (table.value(m1 | m2) > table.value(m1) + table.value(m2) + 1e-7 && s2.head() > s1.tail() + 1) {
          ++positional_cases;
          const Prop3Report r = check_prop3(solver, s1, s2);
          if (!r.holds) ++positional, out.expect(false, tag + ": positional gain " + fmt(r.lhs) + " > " + fmt(r.rhs));
        }
      }
    }

    // Outside node i inside the span of S with strict gain; every j ≻ S keeps it.
    for (std::uint64_t m = 1; m <= table.grand_mask(); ++m) {
      const Coalition s = Coalition::from_mask(m);
      for (int i = s.head() + 1; i < s.tail(); ++i) {
        if (s.contains(i)) continue;
        const std::uint64_t below = m & ((std::uint64_t{1} << (i - 1)) - 1);
        const std::uint64_t above = m & ~below;
        if (table.value(m) <= table.value(below) + table.value(above) + 1e-7) continue;
        for (int j = s.tail() + 1; j <= n; ++j) {
          ++persistent_cases;
          const std::uint64_t bj = std::uint64_t{1} << (j - 1);
          if (!(table.value(m | bj) > table.value(below) + table.value(above | bj)))
            ++persistent, out.expect(false, tag + ": gain lost downstream at S=" + s.to_string() + " i=" + std::to_string(i));
        }
      }
    }

    // Transfers, once positive, stay fixed along the formation chain.
    for (int t = 0; t < 3; ++t) {
      const Coalition s = testkit::random_coalition(rng, n);
      if (s.size() < 3) continue;
      CooperationLedger prev;
      for (int k = 2; k <= s.size(); ++k) {
        const Coalition prefix(std::vector<int>(s.members().begin(), s.members().begin() + k));
        const CooperationLedger cur = cooperation_quantities(solver, prefix);
        for (const auto& [key, v] : cur.delta)
          if (v < -1e-9) ++stable, out.expect(false, tag + ": negative transfer");
        if (k > 2)
          for (const auto& [key, v] : prev.delta)
            if (v > 1e-9 && !near(cur.at(key.first, key.second), v, 1e-9))
              ++stable, out.expect(false, tag + ": transfer (" + std::to_string(key.first) + "," +
                                              std::to_string(key.second) + ") changed along " + s.to_string());
        prev = cur;
      }
    }
  }
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << "violations: superadditivity " << superadditive
             << ", transfer stability " << stable << ", gain persistence " << persistent << "/" << persistent_cases
             << ", upstream bound " << bounded << ", positional gain " << positional << "/" << positional_cases
             << ", directional convexity " << directional;
}

void criterion10(Outcome& out) {
  out.expect(g_solves > 0, "criterion 8 produced no solves");
  out.expect(g_iteration_violations == 0,
             std::to_string(g_iteration_violations) + " of " + std::to_string(g_solves) + " solves exceeded 2n iterations");
  std::mt19937_64 rng(1010);
  testkit::RandomSpec spec;
  spec.min_n = spec.max_n = 12;
  const CoalitionSolver solver(testkit::random_instance(rng, spec));
  const auto t0 = Clock::now();
  const GameTable table = build_table(solver);
  const double t = seconds_since(t0);
  out.expect(table.values().size() == 4096, "table size " + std::to_string(table.values().size()));
  out.expect(t < 60.0, "n = 12 table took " + fmt(t) + " s");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << g_solves << " solves, n = 12 table " << fmt(t) << " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"three-node example values (solver and oracle)", criterion1},
      {"nine-node example, u9 = 6: plans and transfers", criterion2},
      {"nine-node example, u9 = 11: plan and transfers", criterion3},
      {"non-convexity witness and directional convexity", criterion4},
      {"downstream incremental allocation in core, least core <= 0", criterion5},
      {"psi-vertices and their convex combinations in core", criterion6},
      {"solver agrees with brute-force oracle", criterion7},
      {"single-river solves satisfy the optimality conditions", criterion8},
      {"structural properties of the game", criterion9},
      {"iteration bound and n = 12 table", criterion10},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome out;
    const auto t0 = Clock::now();
    try {
      criteria[c].second(out);
    } catch (const std::exception& e) {
      out.expect(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    if (!out.pass) ++failed;
    std::printf("%s [%2zu] %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", c + 1, criteria[c].first.c_str(), t,
                out.detail.tellp() > 0 ? " -- " : "", out.detail.str().c_str());
    if (out.failures > 3) std::printf("         ... %d failures in total\n", out.failures);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
