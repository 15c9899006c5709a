#include "sdg/report.hpp"

#include <cmath>
#include <cstdio>

#include "sdg/instance_io.hpp"

namespace sdg::report {

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

}  // namespace

json coalition(const Coalition& s) { return s.members(); }
json coalition(std::uint64_t mask) { return Coalition::from_mask(mask).members(); }

json plan(const DischargePlan& p, const Instance& inst) {
  return {{"span", {p.span.first, p.span.last}},
          {"start_level", number(p.start_level)},
          {"x", numbers(p.x)},
          {"pollution", numbers(pollution_profile(p, inst))}};
}

json myopic(const MyopicProfile& prof) {
  return {{"span", {prof.span.first, prof.span.last}},
          {"start_level", number(prof.start_level)},
          {"d", numbers(prof.d)},
          {"theta", numbers(prof.theta)}};
}

json solution(const CoalitionSolution& sol, const CoalitionSolver& solver) {
  json blocks = json::array();
  for (const Coalition& b : sol.decomposition) blocks.push_back(coalition(b));
  return {{"coalition", coalition(sol.coalition)},
          {"value", number(sol.value)},
          {"plan", plan(sol.plan, solver.instance())},
          {"decomposition", blocks},
          {"free_riders", free_riders(sol, solver)}};
}

json table(const GameTable& t) {
  json rows = json::array();
  for (std::uint64_t mask = 1; mask <= t.grand_mask(); ++mask)
    rows.push_back({{"coalition", coalition(mask)}, {"value", number(t.value(mask))}});
  return {{"n", t.n()}, {"values", rows}};
}

json ledger(const CooperationLedger& l) {
  json chain = json::array();
  for (const Coalition& c : l.chain) chain.push_back(coalition(c));
  json deltas = json::array();
  for (const auto& [key, v] : l.delta)
    deltas.push_back({{"from", key.first}, {"to", key.second}, {"delta", number(v)}});
  json flows = json::array();
  for (const auto& [i2, inc] : l.increment)
    flows.push_back({{"node", i2}, {"increment", number(inc)}, {"weighted_inflow", number(l.weighted_inflow.at(i2))}});
  return {{"coalition", coalition(l.coalition)}, {"chain", chain}, {"deltas", deltas}, {"flows", flows}};
}

json allocation(const Allocation& a) {
  json out = {{"payoffs", numbers(a.payoffs)}, {"provenance", to_string(a.provenance)}, {"total", number(a.total())}};
  if (!a.psi.empty()) out["psi"] = a.psi;
  return out;
}

json core_report(const CoreReport& r) {
  auto rows = [](const std::vector<CoalitionSlack>& list) {
    json out = json::array();
    for (const auto& e : list)
      out.push_back({{"coalition", coalition(e.mask)},
                     {"value", number(e.value)},
                     {"payoff", number(e.payoff)},
                     {"slack", number(e.slack)}});
    return out;
  };
  return {{"member", r.member},
          {"budget_balanced", r.budget_balanced},
          {"budget_gap", number(r.budget_gap)},
          {"min_slack", number(r.min_slack)},
          {"violations", rows(r.violations)},
          {"tight", rows(r.tight)}};
}

json pair_report(const PairCheckReport& r, const std::string& check) {
  json rows = json::array();
  for (const auto& v : r.violations)
    rows.push_back({{"S", coalition(v.s)},
                    {"T", coalition(v.t)},
                    {"lhs", number(v.lhs)},
                    {"rhs", number(v.rhs)},
                    {"gap", number(v.gap)}});
  return {{"check", check}, {"holds", r.holds}, {"pairs_checked", r.pairs_checked}, {"violations", rows}};
}

json trace(const std::vector<LliIteration>& iterations) {
  json out = json::array();
  for (const auto& it : iterations)
    out.push_back({{"layer", it.layer},
                   {"sigma1", number(it.sigma1)},
                   {"sigma2", number(it.sigma2)},
                   {"sigma3", number(it.sigma3)},
                   {"step", number(it.step)},
                   {"frozen", it.frozen},
                   {"x", numbers(it.x)}});
  return out;
}

std::string instance_digest(const Instance& inst) {
  const std::string text = instance_to_json(inst, -1);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string dump(const json& doc) { return doc.dump(2); }

}  // namespace sdg::report
