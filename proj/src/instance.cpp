#include "sdg/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdg/errors.hpp"
#include "sdg/tolerance.hpp"

namespace sdg {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonConcaveProfit: return "NonConcaveProfit";
    case ViolationKind::NegativeDerivativeOnDomain: return "NegativeDerivativeOnDomain";
    case ViolationKind::BaselineInfeasible: return "BaselineInfeasible";
    case ViolationKind::BadBounds: return "BadBounds";
    case ViolationKind::BadParameter: return "BadParameter";
    case ViolationKind::EmptyInstance: return "EmptyInstance";
  }
  return "Unknown";
}

const NodeParams& Instance::node(int i) const {
  if (i < 1 || i > n()) throw Error(errc::kIndexOutOfRange, "node " + std::to_string(i));
  return nodes_[static_cast<std::size_t>(i - 1)];
}

double Instance::k(int i) const {
  if (i == 0) return 1.0;
  return node(i).k;
}

namespace {

void check_profit(const NodeParams& nd, int i, std::vector<Violation>& out) {
  const ProfitFunction& f = nd.f;
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(f.p()) || !finite(f.second())) {
    out.push_back({ViolationKind::BadParameter, i, "profit parameters must be finite"});
    return;
  }
  switch (f.kind()) {
    case ProfitKind::linear:
    case ProfitKind::logarithmic:
      if (f.p() <= 0.0)
        out.push_back({ViolationKind::NegativeDerivativeOnDomain, i, "slope p must be positive"});
      break;
    case ProfitKind::quadratic:
      if (f.second() <= 0.0)
        out.push_back({ViolationKind::NonConcaveProfit, i, "quadratic coefficient q must be positive"});
      else if (f.p() - 2.0 * f.second() * nd.u < 0.0)
        out.push_back({ViolationKind::NegativeDerivativeOnDomain, i, "p - 2 q u must be non-negative"});
      break;
    case ProfitKind::power:
      if (f.second() <= 0.0 || f.second() >= 1.0)
        out.push_back({ViolationKind::NonConcaveProfit, i, "power exponent r must lie in (0, 1)"});
      if (f.p() <= 0.0)
        out.push_back({ViolationKind::NegativeDerivativeOnDomain, i, "coefficient p must be positive"});
      break;
  }
}

}  // namespace

Validation validate_instance(const RawInstance& raw) {
  Validation result;
  auto& out = result.violations;
  if (raw.nodes.empty()) out.push_back({ViolationKind::EmptyInstance, 0, "instance has no nodes"});
  if (!std::isfinite(raw.b0) || raw.b0 < 0.0)
    out.push_back({ViolationKind::BadParameter, 0, "b0 must be finite and non-negative"});

  bool bounds_ok = true;
  for (std::size_t idx = 0; idx < raw.nodes.size(); ++idx) {
    const int i = static_cast<int>(idx) + 1;
    const NodeParams& nd = raw.nodes[idx];
    if (!std::isfinite(nd.b) || nd.b <= 0.0)
      out.push_back({ViolationKind::BadParameter, i, "tolerance b must be positive"});
    if (!std::isfinite(nd.k) || nd.k <= 0.0)
      out.push_back({ViolationKind::BadParameter, i, "residual rate k must be positive"});
    if (!std::isfinite(nd.a) || !std::isfinite(nd.u) || nd.a < 0.0 || nd.a > nd.u) {
      out.push_back({ViolationKind::BadBounds, i, "require 0 <= a <= u"});
      bounds_ok = false;
    }
    check_profit(nd, i, out);
  }

  if (bounds_ok && out.empty()) {
    double c = raw.b0;
    for (std::size_t idx = 0; idx < raw.nodes.size(); ++idx) {
      const double k_prev = idx == 0 ? 1.0 : raw.nodes[idx - 1].k;
      c = k_prev * c + raw.nodes[idx].a;
      if (c > raw.nodes[idx].b + tol::kPollution) {
        std::ostringstream msg;
        msg << "all-a plan reaches " << c << " > b = " << raw.nodes[idx].b;
        out.push_back({ViolationKind::BaselineInfeasible, static_cast<int>(idx) + 1, msg.str()});
      }
    }
  }

  if (out.empty()) result.instance = Instance(raw.b0, raw.nodes);
  return result;
}

Instance make_instance(const RawInstance& raw) {
  Validation v = validate_instance(raw);
  if (v.ok()) return *v.instance;
  std::ostringstream msg;
  for (std::size_t j = 0; j < v.violations.size(); ++j) {
    const Violation& viol = v.violations[j];
    if (j) msg << "; ";
    msg << to_string(viol.kind);
    if (viol.node) msg << "(" << viol.node << ")";
    msg << " " << viol.message;
  }
  throw Error(errc::kValidationFailed, msg.str());
}

Coalition::Coalition(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw Error(errc::kInvalidCoalition, "duplicate member");
  if (!members_.empty() && members_.front() < 1)
    throw Error(errc::kInvalidCoalition, "node indices are 1-based");
}

Coalition Coalition::from_mask(std::uint64_t mask) {
  std::vector<int> m;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1U) m.push_back(i + 1);
  return Coalition(std::move(m));
}

Coalition Coalition::interval(int first, int last) {
  std::vector<int> m;
  for (int i = first; i <= last; ++i) m.push_back(i);
  return Coalition(std::move(m));
}

bool Coalition::contains(int i) const { return std::binary_search(members_.begin(), members_.end(), i); }

std::uint64_t Coalition::mask() const {
  std::uint64_t m = 0;
  for (int i : members_) {
    if (i > 64) throw Error(errc::kInstanceTooLarge, "coalition mask needs node <= 64");
    m |= std::uint64_t{1} << (i - 1);
  }
  return m;
}

Coalition Coalition::before(int i) const {
  std::vector<int> m;
  for (int j : members_)
    if (j < i) m.push_back(j);
  return Coalition(std::move(m));
}

Coalition Coalition::after(int i) const {
  std::vector<int> m;
  for (int j : members_)
    if (j > i) m.push_back(j);
  return Coalition(std::move(m));
}

Coalition Coalition::with(int i) const {
  if (contains(i)) return *this;
  std::vector<int> m = members_;
  m.push_back(i);
  return Coalition(std::move(m));
}

std::string Coalition::to_string() const {
  std::string s = "{";
  for (std::size_t j = 0; j < members_.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(members_[j]);
  }
  return s + "}";
}

std::vector<Coalition> consecutive_partition(const Coalition& s) {
  std::vector<Coalition> parts;
  std::vector<int> run;
  for (int i : s.members()) {
    if (!run.empty() && i != run.back() + 1) {
      parts.emplace_back(std::move(run));
      run.clear();
    }
    run.push_back(i);
  }
  if (!run.empty()) parts.emplace_back(std::move(run));
  return parts;
}

Coalition unite(const Coalition& a, const Coalition& b) {
  std::vector<int> m;
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                 std::back_inserter(m));
  return Coalition(std::move(m));
}

Coalition parse_coalition(const std::string& text) {
  std::vector<int> m;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(errc::kInvalidCoalition, "bad member '" + item + "'");
    m.push_back(v);
  }
  if (m.empty()) throw Error(errc::kInvalidCoalition, "empty coalition");
  return Coalition(std::move(m));
}

void check_coalition(const Coalition& s, const Instance& inst) {
  if (s.empty()) throw Error(errc::kInvalidCoalition, "empty coalition");
  if (s.tail() > inst.n())
    throw Error(errc::kIndexOutOfRange,
                "coalition " + s.to_string() + " exceeds n = " + std::to_string(inst.n()));
}

double plan_value(const DischargePlan& plan, const Coalition& s, const Instance& inst) {
  double v = 0.0;
  for (int i : s.members())
    if (plan.span.contains(i)) v += inst.f(i).value(plan.at(i));
  return v;
}

}  // namespace sdg
