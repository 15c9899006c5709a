#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdg/profit.hpp"

namespace sdg {

struct NodeParams {
  double b = 0.0;  // pollution tolerance
  double k = 1.0;  // residual rate towards the next downstream node
  double a = 0.0;  // basic discharge level
  double u = 0.0;  // maximum discharge level
  ProfitFunction f = ProfitFunction::linear(1.0);

  bool operator==(const NodeParams&) const = default;
};

// Unchecked instance as read from a file.
struct RawInstance {
  double b0 = 0.0;
  std::vector<NodeParams> nodes;
};

enum class ViolationKind {
  NonConcaveProfit,
  NegativeDerivativeOnDomain,
  BaselineInfeasible,
  BadBounds,
  BadParameter,
  EmptyInstance,
};

std::string to_string(ViolationKind kind);

struct Validation;
struct RawInstance;

struct Violation {
  ViolationKind kind;
  int node = 0;  // 1-based, 0 when not node specific
  std::string message;
};

/// Validated river instance. Nodes are numbered 1..n upstream to downstream,
/// node 0 is the virtual source with k_0 = 1 and level b0.
class Instance {
 public:
  int n() const { return static_cast<int>(nodes_.size()); }
  double b0() const { return b0_; }

  const NodeParams& node(int i) const;
  // Residual rate k_i, with k_0 = 1.
  double k(int i) const;
  double b(int i) const { return node(i).b; }
  double a(int i) const { return node(i).a; }
  double u(int i) const { return node(i).u; }
  const ProfitFunction& f(int i) const { return node(i).f; }

  const std::vector<NodeParams>& nodes() const { return nodes_; }
  RawInstance raw() const { return {b0_, nodes_}; }

  bool operator==(const Instance&) const = default;

 private:
  friend Validation validate_instance(const RawInstance& raw);
  Instance(double b0, std::vector<NodeParams> nodes) : b0_(b0), nodes_(std::move(nodes)) {}

  double b0_ = 0.0;
  std::vector<NodeParams> nodes_;
};

struct Validation {
  std::optional<Instance> instance;
  std::vector<Violation> violations;

  bool ok() const { return instance.has_value(); }
};

Validation validate_instance(const RawInstance& raw);
// Throws sdg::Error(ValidationFailed) listing every violation.
Instance make_instance(const RawInstance& raw);

struct Interval {
  int first = 1;
  int last = 0;

  int size() const { return last - first + 1; }
  bool contains(int i) const { return first <= i && i <= last; }
  bool operator==(const Interval&) const = default;
};

class Coalition {
 public:
  Coalition() = default;
  // Members are 1-based node indices; they are sorted and must be distinct and positive.
  explicit Coalition(std::vector<int> members);
  static Coalition from_mask(std::uint64_t mask);
  static Coalition interval(int first, int last);

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  int head() const { return members_.front(); }
  int tail() const { return members_.back(); }
  Interval span() const { return {head(), tail()}; }
  bool contains(int i) const;
  bool consecutive() const { return empty() || tail() - head() + 1 == size(); }
  std::uint64_t mask() const;

  // Members strictly upstream / downstream of node i.
  Coalition before(int i) const;
  Coalition after(int i) const;
  Coalition with(int i) const;

  std::string to_string() const;
  bool operator==(const Coalition&) const = default;
  auto operator<=>(const Coalition&) const = default;

 private:
  std::vector<int> members_;
};

std::vector<Coalition> consecutive_partition(const Coalition& s);
Coalition unite(const Coalition& a, const Coalition& b);
Coalition parse_coalition(const std::string& text);

// Checks the coalition lies inside 1..n; throws IndexOutOfRange otherwise.
void check_coalition(const Coalition& s, const Instance& inst);

struct DischargePlan {
  Interval span;
  double start_level = 0.0;  // pollution arriving at span.first before its own discharge
  std::vector<double> x;    // x[i - span.first]

  double at(int i) const { return x.at(static_cast<std::size_t>(i - span.first)); }
  double& at(int i) { return x.at(static_cast<std::size_t>(i - span.first)); }
};

double plan_value(const DischargePlan& plan, const Coalition& s, const Instance& inst);

}  // namespace sdg
