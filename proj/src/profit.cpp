#include "sdg/profit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdg {

std::string_view to_string(ProfitKind kind) {
  switch (kind) {
    case ProfitKind::linear: return "linear";
    case ProfitKind::quadratic: return "quadratic";
    case ProfitKind::logarithmic: return "logarithmic";
    case ProfitKind::power: return "power";
  }
  return "unknown";
}

ProfitKind profit_kind_from_string(std::string_view name) {
  if (name == "linear") return ProfitKind::linear;
  if (name == "quadratic") return ProfitKind::quadratic;
  if (name == "logarithmic") return ProfitKind::logarithmic;
  if (name == "power") return ProfitKind::power;
  throw std::invalid_argument("unknown profit kind '" + std::string(name) + "'");
}

ProfitFunction ProfitFunction::linear(double p) { return {ProfitKind::linear, p, 0.0}; }
ProfitFunction ProfitFunction::quadratic(double p, double q) { return {ProfitKind::quadratic, p, q}; }
ProfitFunction ProfitFunction::logarithmic(double p) { return {ProfitKind::logarithmic, p, 0.0}; }
ProfitFunction ProfitFunction::power(double p, double r) { return {ProfitKind::power, p, r}; }

double ProfitFunction::value(double x) const {
  switch (kind_) {
    case ProfitKind::linear: return p_ * x;
    case ProfitKind::quadratic: return p_ * x - s_ * x * x;
    case ProfitKind::logarithmic: return p_ * std::log1p(x);
    case ProfitKind::power: return x <= 0.0 ? 0.0 : p_ * std::pow(x, s_);
  }
  return 0.0;
}

double ProfitFunction::derivative(double x) const {
  switch (kind_) {
    case ProfitKind::linear: return p_;
    case ProfitKind::quadratic: return p_ - 2.0 * s_ * x;
    case ProfitKind::logarithmic: return p_ / (1.0 + x);
    case ProfitKind::power:
      if (x <= 0.0) return std::numeric_limits<double>::infinity();
      return p_ * s_ * std::pow(x, s_ - 1.0);
  }
  return 0.0;
}

double ProfitFunction::inverse_derivative(double y) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case ProfitKind::linear:
      throw std::logic_error("linear profit has no inverse derivative");
    case ProfitKind::quadratic:
      if (std::isinf(y)) return -inf;
      return (p_ - y) / (2.0 * s_);
    case ProfitKind::logarithmic:
      if (std::isinf(y)) return -1.0;
      if (y <= 0.0) return inf;
      return p_ / y - 1.0;
    case ProfitKind::power:
      if (std::isinf(y)) return 0.0;
      if (y <= 0.0) return inf;
      return std::pow(y / (p_ * s_), 1.0 / (s_ - 1.0));
  }
  return 0.0;
}

}  // namespace sdg
