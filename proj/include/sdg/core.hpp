#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdg/game.hpp"

namespace sdg {

enum class Provenance { downstream_incremental, psi_vertex, lp, user };
std::string to_string(Provenance p);

struct Allocation {
  std::vector<double> payoffs;  // payoffs[i-1] = α_i
  Provenance provenance = Provenance::user;
  std::vector<int> psi;         // set for psi_vertex

  double total() const;
};

Allocation downstream_incremental(const GameTable& table);

// ψ_1 = ψ_n = 0, entries binary. Throws Error(InvalidPsi).
void check_psi(const std::vector<int>& psi);
// Joining order: order[j-1] = π_ψ^{-1}(j).
std::vector<int> rearranged_order(const std::vector<int>& psi, const Permutation& pi = {});
// π_ψ as a permutation (position of each player).
Permutation rearranged_permutation(const std::vector<int>& psi, const Permutation& pi = {});

Allocation psi_vertex(const GameTable& table, const std::vector<int>& psi, const Permutation& pi = {});
// All 2^{n-2} vectors ψ (n >= 2), in increasing binary order of ψ_2..ψ_{n-1}.
std::vector<std::vector<int>> all_psi(int n);
std::vector<Allocation> all_psi_vertices(const GameTable& table, const Permutation& pi = {});
std::vector<Allocation> all_psi_vertices_serial(const GameTable& table, const Permutation& pi = {});

struct CoalitionSlack {
  std::uint64_t mask = 0;
  double value = 0.0;     // v(S)
  double payoff = 0.0;    // α(S)
  double slack = 0.0;     // α(S) - v(S)
};

struct CoreReport {
  bool member = false;
  bool budget_balanced = false;
  double budget_gap = 0.0;                 // Σα - v(N)
  std::vector<CoalitionSlack> violations;  // slack < -tol, most violated first
  std::vector<CoalitionSlack> tight;       // |slack| <= tol
  double min_slack = 0.0;
};

CoreReport core_membership(const Allocation& alpha, const GameTable& table, double tol = 1e-9);
CoreReport core_membership_serial(const Allocation& alpha, const GameTable& table, double tol = 1e-9);

struct LeastCore {
  double epsilon = 0.0;
  Allocation allocation;
};

inline constexpr int kLeastCoreCap = 12;
LeastCore least_core(const GameTable& table);

}  // namespace sdg
