#pragma once

#include <string>

#include <json.hpp>

#include "sdg/core.hpp"
#include "sdg/game.hpp"
#include "sdg/hydrology.hpp"

namespace sdg::report {

using nlohmann::json;

// Coalitions are written as 1-based member arrays.
json coalition(const Coalition& s);
json coalition(std::uint64_t mask);
json plan(const DischargePlan& p, const Instance& inst);
json myopic(const MyopicProfile& prof);
json solution(const CoalitionSolution& sol, const CoalitionSolver& solver);
json table(const GameTable& t);
json ledger(const CooperationLedger& l);
json allocation(const Allocation& a);
json core_report(const CoreReport& r);
json pair_report(const PairCheckReport& r, const std::string& check);
json trace(const std::vector<LliIteration>& iterations);

// Short FNV-1a digest of the canonical instance JSON.
std::string instance_digest(const Instance& inst);

// Dumps with a fixed layout so identical inputs give identical bytes.
std::string dump(const json& doc);

}  // namespace sdg::report
