#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "random_instances.hpp"
#include "sdg/core.hpp"
#include "sdg/errors.hpp"
#include "sdg/simplex.hpp"

using namespace sdg;

namespace {

GameTable example_table() { return build_table(CoalitionSolver(testkit::three_node())); }

Allocation user(std::vector<double> p) {
  Allocation a;
  a.payoffs = std::move(p);
  return a;
}

}  // namespace

TEST_CASE("downstream incremental allocation") {
  const GameTable t = example_table();
  const Allocation a = downstream_incremental(t);
  CHECK(a.payoffs == std::vector<double>{42, 24, 67});
  const CoreReport rep = core_membership(a, t);
  CHECK(rep.member);
  bool tight23 = false;
  for (const auto& e : rep.tight) tight23 = tight23 || e.mask == Coalition({2, 3}).mask();
  CHECK(tight23);

  const GameTable additive = GameTable::from_values(2, {0, 2, 3, 5});
  CHECK(downstream_incremental(additive).payoffs == std::vector<double>{2, 3});
  CHECK(downstream_incremental(GameTable::from_values(1, {0, 7})).payoffs == std::vector<double>{7});
}

TEST_CASE("core membership reports budget and coalition violations") {
  const GameTable t = example_table();
  const CoreReport over = core_membership(user({44, 24, 67}), t);
  CHECK_FALSE(over.member);
  CHECK_FALSE(over.budget_balanced);
  CHECK(over.budget_gap == doctest::Approx(2));

  const CoreReport bad = core_membership(user({50, 24, 59}), t);
  CHECK_FALSE(bad.member);
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations.front().mask == Coalition({2, 3}).mask());
  CHECK(bad.violations.front().payoff == doctest::Approx(83));
  CHECK(bad.violations.front().value == doctest::Approx(91));

  const CoreReport serial = core_membership_serial(user({50, 24, 59}), t);
  CHECK(serial.violations.size() == bad.violations.size());
  CHECK(serial.min_slack == bad.min_slack);
}

TEST_CASE("rearranged joining orders") {
  CHECK(rearranged_order({0, 0, 0}) == std::vector<int>{1, 2, 3});
  CHECK(rearranged_order({0, 1, 0}) == std::vector<int>{1, 3, 2});
  CHECK(rearranged_order({0, 1, 1, 0}) == std::vector<int>{1, 3, 4, 2});
  CHECK(rearranged_permutation({0, 1, 0}) == Permutation{1, 3, 2});
  CHECK_THROWS_WITH_AS(rearranged_order({1, 0, 0}), doctest::Contains("InvalidPsi"), Error);
  CHECK_THROWS_AS(rearranged_order({0, 2, 0}), Error);
  for (int n = 2; n <= 9; ++n) {
    for (const auto& psi : all_psi(n)) {
      auto order = rearranged_order(psi);
      std::sort(order.begin(), order.end());
      for (int j = 0; j < n; ++j) CHECK(order[j] == j + 1);
    }
  }
  // Non-identity base permutation: all-zero ψ reproduces it.
  const Permutation pi = {3, 1, 2};
  CHECK(rearranged_permutation({0, 0, 0}, pi) == pi);
}

TEST_CASE("psi vertices of the three-node example") {
  const GameTable t = example_table();
  CHECK(psi_vertex(t, {0, 0, 0}).payoffs == downstream_incremental(t).payoffs);
  const Allocation v = psi_vertex(t, {0, 1, 0});
  CHECK(v.payoffs[0] == doctest::Approx(42));
  CHECK(v.payoffs[1] == doctest::Approx(37));
  CHECK(v.payoffs[2] == doctest::Approx(54));
  CHECK(core_membership(v, t).member);
  const GameTable two = GameTable::from_values(2, {0, 2, 3, 9});
  CHECK(psi_vertex(two, {0, 0}).payoffs == std::vector<double>{2, 7});
  const auto all = all_psi_vertices(t);
  const auto serial = all_psi_vertices_serial(t);
  REQUIRE(all.size() == 2);
  for (std::size_t q = 0; q < all.size(); ++q) CHECK(all[q].payoffs == serial[q].payoffs);
}

TEST_CASE("simplex kernel on a small program") {
  // max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
  const SimplexResult r = simplex_maximize({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {1, 1, 0, 0});
  REQUIRE(r.status == SimplexResult::Status::optimal);
  CHECK(r.objective == doctest::Approx(2.8));
  CHECK(r.duals[0] == doctest::Approx(0.4));
  CHECK(r.duals[1] == doctest::Approx(0.2));
  CHECK(simplex_maximize({{1, 1}}, {-1}, {1, 1}).status == SimplexResult::Status::infeasible);
  CHECK(simplex_maximize({{1, -1}}, {1}, {1, 0}).status == SimplexResult::Status::unbounded);
}

TEST_CASE("least core") {
  const GameTable t = example_table();
  const LeastCore lc = least_core(t);
  CHECK(lc.epsilon <= 1e-9);
  CHECK(core_membership(lc.allocation, t).member);

  const GameTable additive = GameTable::from_values(3, {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(least_core(additive).epsilon <= 1e-9);

  const GameTable empty_core = GameTable::from_values(2, {0, 5, 5, 8});
  const LeastCore e = least_core(empty_core);
  CHECK(e.epsilon == doctest::Approx(1));
  CHECK_FALSE(core_membership(e.allocation, empty_core).member);
}

TEST_CASE("least core allocation attains epsilon on random games") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> val(0.0, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + rep % 5;
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (std::size_t m = 1; m < v.size(); ++m) v[m] = val(rng) * std::popcount(m);
    const GameTable t = GameTable::from_values(n, v);
    const LeastCore lc = least_core(t);
    double worst = -1e300;
    for (std::uint64_t m = 1; m < t.grand_mask(); ++m) {
      double pay = 0.0;
      for (int i = 0; i < n; ++i)
        if (m >> i & 1U) pay += lc.allocation.payoffs[i];
      worst = std::max(worst, t.value(m) - pay);
    }
    CHECK(worst == doctest::Approx(lc.epsilon).epsilon(1e-7));
    CHECK(lc.allocation.total() == doctest::Approx(t.grand_value()));
  }
}

TEST_CASE("least core size cap") {
  std::vector<double> v(std::size_t{1} << 13, 0.0);
  CHECK_THROWS_WITH_AS(least_core(GameTable::from_values(13, v)), doctest::Contains("InstanceTooLarge"), Error);
}
