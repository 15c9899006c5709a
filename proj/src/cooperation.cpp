#include <map>

#include "sdg/errors.hpp"
#include "sdg/game.hpp"
#include "sdg/hydrology.hpp"
#include "sdg/tolerance.hpp"

namespace sdg {

namespace {

// Discharges over `span` under the coalition's optimal plan, θ outside its own span.
std::map<int, double> extended_plan(const CoalitionSolver& solver, const Coalition& s, Interval span) {
  const CoalitionSolution sol = solver.coalition_value(s);
  std::map<int, double> x;
  for (int i = span.first; i <= span.last; ++i)
    x[i] = sol.plan.span.contains(i) ? sol.plan.at(i) : solver.theta(i);
  return x;
}

struct TransferPair {
  DischargePlan with_prior;  // i2 held at its prior discharge
  DischargePlan with_new;    // i2 at its new discharge
};

TransferPair transfer_plans(const CoalitionSolver& solver, const Coalition& cur, int i2,
                            const std::map<int, double>& x_cur, const std::map<int, double>& x_prior) {
  std::map<int, double> pinned;
  std::map<int, double> caps;
  for (int j = cur.head(); j < i2; ++j) {
    if (cur.contains(j) && x_cur.at(j) < x_prior.at(j) - tol::kPollution)
      caps[j] = x_prior.at(j);  // donors may give back at most what they gave up
    else
      pinned[j] = x_cur.at(j);
  }
  for (int j = i2 + 1; j <= cur.tail(); ++j) pinned[j] = x_prior.at(j);
  pinned[i2] = x_prior.at(i2);
  TransferPair out;
  out.with_prior = solver.w_fixed(cur, pinned, caps).plan;
  pinned[i2] = x_cur.at(i2);
  out.with_new = solver.w_fixed(cur, pinned, caps).plan;
  return out;
}

}  // namespace

CooperationLedger cooperation_quantities(const CoalitionSolver& solver, const Coalition& s) {
  check_coalition(s, solver.instance());
  if (s.size() < 2) throw Error(errc::kPreconditionNotMet, "cooperation quantities need |S| >= 2");
  const Instance& inst = solver.instance();
  const std::vector<int>& members = s.members();
  const Interval span = s.span();

  CooperationLedger ledger;
  ledger.coalition = s;
  std::map<std::pair<int, int>, double> delta;
  Coalition prior({members[0]});
  std::map<int, double> x_prior = extended_plan(solver, prior, span);

  for (std::size_t step = 1; step < members.size(); ++step) {
    const Coalition cur = prior.with(members[step]);
    ledger.chain.push_back(cur);
    const std::map<int, double> x_cur = extended_plan(solver, cur, span);
    std::map<int, TransferPair> cache;
    std::map<std::pair<int, int>, double> next;

    for (int i1 : cur.members()) {
      for (int i2 = i1 + 1; i2 <= cur.tail(); ++i2) {
        const double previous = delta.count({i1, i2}) ? delta.at({i1, i2}) : 0.0;
        const bool upstream_gained = x_cur.at(i1) - x_prior.at(i1) >= -tol::kPollution;
        const bool downstream_lost = x_cur.at(i2) - x_prior.at(i2) <= tol::kPollution;
        if (upstream_gained || downstream_lost) {
          next[{i1, i2}] = previous;
          continue;
        }
        auto it = cache.find(i2);
        if (it == cache.end()) it = cache.emplace(i2, transfer_plans(solver, cur, i2, x_cur, x_prior)).first;
        next[{i1, i2}] = it->second.with_prior.at(i1) - it->second.with_new.at(i1);
      }
    }

    for (int i2 = cur.head() + 1; i2 <= cur.tail(); ++i2) {
      double inflow = 0.0;
      bool touched = false;
      for (int i1 : cur.members()) {
        if (i1 >= i2) break;
        const double d = next.at({i1, i2});
        inflow += residual_rate(i1, i2 - 1, inst) * d;
        const double previous = delta.count({i1, i2}) ? delta.at({i1, i2}) : 0.0;
        touched = touched || d != previous;
      }
      if (touched || !ledger.increment.count(i2)) {
        ledger.increment[i2] = x_cur.at(i2) - x_prior.at(i2);
        ledger.weighted_inflow[i2] = inflow;
      }
    }

    delta = std::move(next);
    prior = cur;
    x_prior = x_cur;
  }
  ledger.delta = std::move(delta);
  return ledger;
}

}  // namespace sdg
