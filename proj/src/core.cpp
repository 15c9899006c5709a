#include "sdg/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "sdg/errors.hpp"
#include "sdg/simplex.hpp"
#include "sdg/tolerance.hpp"

namespace sdg {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::downstream_incremental: return "downstream-incremental";
    case Provenance::psi_vertex: return "psi-vertex";
    case Provenance::lp: return "lp";
    case Provenance::user: return "user";
  }
  return "unknown";
}

double Allocation::total() const { return std::accumulate(payoffs.begin(), payoffs.end(), 0.0); }

Allocation downstream_incremental(const GameTable& table) {
  Allocation out;
  out.provenance = Provenance::downstream_incremental;
  double previous = 0.0;
  std::uint64_t prefix = 0;
  for (int i = 1; i <= table.n(); ++i) {
    prefix |= std::uint64_t{1} << (i - 1);
    const double v = table.value(prefix);
    out.payoffs.push_back(v - previous);
    previous = v;
  }
  return out;
}

void check_psi(const std::vector<int>& psi) {
  if (psi.empty()) throw Error(errc::kInvalidPsi, "empty vector");
  for (int v : psi)
    if (v != 0 && v != 1) throw Error(errc::kInvalidPsi, "entries must be 0 or 1");
  if (psi.front() != 0 || psi.back() != 0) throw Error(errc::kInvalidPsi, "first and last entries must be 0");
}

std::vector<int> rearranged_order(const std::vector<int>& psi, const Permutation& pi) {
  check_psi(psi);
  const int n = static_cast<int>(psi.size());
  const Permutation p = pi.empty() ? identity_permutation(n) : pi;
  check_permutation(p, n);
  std::vector<int> inverse(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) inverse[p[i - 1]] = i;

  std::vector<int> order;
  int last_zero = 0;
  for (int j = 1; j <= n; ++j) {
    if (psi[j - 1] == 1) {
      order.push_back(inverse[j + 1]);
    } else {
      order.push_back(inverse[last_zero + 1]);
      last_zero = j;
    }
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < n; ++j)
    if (sorted[j] != j + 1) throw Error(errc::kInvalidPsi, "rearrangement is not a bijection");
  return order;
}

Permutation rearranged_permutation(const std::vector<int>& psi, const Permutation& pi) {
  const std::vector<int> order = rearranged_order(psi, pi);
  Permutation out(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) out[order[j] - 1] = static_cast<int>(j) + 1;
  return out;
}

Allocation psi_vertex(const GameTable& table, const std::vector<int>& psi, const Permutation& pi) {
  if (static_cast<int>(psi.size()) != table.n()) throw Error(errc::kInvalidPsi, "length must equal n");
  const std::vector<int> order = rearranged_order(psi, pi);
  Allocation out;
  out.provenance = Provenance::psi_vertex;
  out.psi = psi;
  out.payoffs.assign(order.size(), 0.0);
  std::uint64_t joined = 0;
  double previous = 0.0;
  for (int player : order) {
    joined |= std::uint64_t{1} << (player - 1);
    const double v = table.value(joined);
    out.payoffs[player - 1] = v - previous;
    previous = v;
  }
  return out;
}

std::vector<std::vector<int>> all_psi(int n) {
  std::vector<std::vector<int>> out;
  if (n == 1) return {{0}};
  const int inner = n - 2;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << inner); ++bits) {
    std::vector<int> psi(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < inner; ++j) psi[j + 1] = static_cast<int>((bits >> (inner - 1 - j)) & 1U);
    out.push_back(std::move(psi));
  }
  return out;
}

std::vector<Allocation> all_psi_vertices_serial(const GameTable& table, const Permutation& pi) {
  std::vector<Allocation> out;
  for (const auto& psi : all_psi(table.n())) out.push_back(psi_vertex(table, psi, pi));
  return out;
}

std::vector<Allocation> all_psi_vertices(const GameTable& table, const Permutation& pi) {
  const std::vector<std::vector<int>> family = all_psi(table.n());
  std::vector<Allocation> out(family.size());
  const auto count = static_cast<long long>(family.size());
#pragma omp parallel for schedule(static)
  for (long long q = 0; q < count; ++q) out[static_cast<std::size_t>(q)] = psi_vertex(table, family[q], pi);
  return out;
}

namespace {

double coalition_payoff(const Allocation& alpha, std::uint64_t mask) {
  double s = 0.0;
  while (mask) {
    s += alpha.payoffs[static_cast<std::size_t>(std::countr_zero(mask))];
    mask &= mask - 1;
  }
  return s;
}

CoreReport start_report(const Allocation& alpha, const GameTable& table, double tol) {
  if (static_cast<int>(alpha.payoffs.size()) != table.n())
    throw Error(errc::kPreconditionNotMet, "allocation length must equal n");
  CoreReport rep;
  rep.budget_gap = alpha.total() - table.grand_value();
  rep.budget_balanced = std::fabs(rep.budget_gap) <= tol;
  rep.min_slack = std::numeric_limits<double>::infinity();
  return rep;
}

void classify(CoreReport& rep, const CoalitionSlack& entry, double tol) {
  rep.min_slack = std::min(rep.min_slack, entry.slack);
  if (entry.slack < -tol) rep.violations.push_back(entry);
  else if (entry.slack <= tol) rep.tight.push_back(entry);
}

void finish(CoreReport& rep) {
  auto by_slack = [](const CoalitionSlack& a, const CoalitionSlack& b) {
    return a.slack != b.slack ? a.slack < b.slack : a.mask < b.mask;
  };
  std::sort(rep.violations.begin(), rep.violations.end(), by_slack);
  std::sort(rep.tight.begin(), rep.tight.end(),
            [](const CoalitionSlack& a, const CoalitionSlack& b) { return a.mask < b.mask; });
  if (std::isinf(rep.min_slack)) rep.min_slack = 0.0;
  rep.member = rep.budget_balanced && rep.violations.empty();
}

}  // namespace

CoreReport core_membership_serial(const Allocation& alpha, const GameTable& table, double tol) {
  CoreReport rep = start_report(alpha, table, tol);
  for (std::uint64_t mask = 1; mask < table.grand_mask(); ++mask) {
    const double pay = coalition_payoff(alpha, mask);
    classify(rep, {mask, table.value(mask), pay, pay - table.value(mask)}, tol);
  }
  finish(rep);
  return rep;
}

CoreReport core_membership(const Allocation& alpha, const GameTable& table, double tol) {
  CoreReport rep = start_report(alpha, table, tol);
  const auto grand = static_cast<long long>(table.grand_mask());
#pragma omp parallel
  {
    CoreReport local;
    local.min_slack = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static) nowait
    for (long long m = 1; m < grand; ++m) {
      const auto mask = static_cast<std::uint64_t>(m);
      const double pay = coalition_payoff(alpha, mask);
      classify(local, {mask, table.value(mask), pay, pay - table.value(mask)}, tol);
    }
#pragma omp critical(sdg_core_merge)
    {
      rep.min_slack = std::min(rep.min_slack, local.min_slack);
      rep.violations.insert(rep.violations.end(), local.violations.begin(), local.violations.end());
      rep.tight.insert(rep.tight.end(), local.tight.begin(), local.tight.end());
    }
  }
  finish(rep);
  return rep;
}

LeastCore least_core(const GameTable& table) {
  const int n = table.n();
  if (n > kLeastCoreCap)
    throw Error(errc::kInstanceTooLarge, "least core supports n <= " + std::to_string(kLeastCoreCap));
  LeastCore out;
  out.allocation.provenance = Provenance::lp;
  if (n == 1) {
    out.epsilon = -std::numeric_limits<double>::infinity();
    out.allocation.payoffs = {table.grand_value()};
    return out;
  }
  // Dual program: max Σ y_S v(S) + z v(N)  s.t.  Σ_{S∋i} y_S + z = 0 (∀i),  Σ y_S = 1.
  // Its row multipliers are the least-core allocation α and ε.
  const std::uint64_t grand = table.grand_mask();
  const std::size_t cols = static_cast<std::size_t>(grand - 1) + 2;
  std::vector<std::vector<double>> A(static_cast<std::size_t>(n) + 1, std::vector<double>(cols, 0.0));
  std::vector<double> c(cols, 0.0);
  std::size_t col = 0;
  for (std::uint64_t mask = 1; mask < grand; ++mask, ++col) {
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1U) A[i][col] = 1.0;
    A[n][col] = 1.0;
    c[col] = table.value(mask);
  }
  for (int i = 0; i < n; ++i) {
    A[i][col] = 1.0;
    A[i][col + 1] = -1.0;
  }
  c[col] = table.grand_value();
  c[col + 1] = -table.grand_value();
  std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
  b[n] = 1.0;

  const SimplexResult res = simplex_maximize(A, b, c);
  if (res.status != SimplexResult::Status::optimal)
    throw Error(errc::kInternal, "least-core program did not reach an optimum");
  out.allocation.payoffs.assign(res.duals.begin(), res.duals.begin() + n);
  out.epsilon = res.duals[n];
  return out;
}

}  // namespace sdg
