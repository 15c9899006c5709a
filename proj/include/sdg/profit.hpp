#pragma once

#include <string>
#include <string_view>

namespace sdg {

enum class ProfitKind { linear, quadratic, logarithmic, power };

std::string_view to_string(ProfitKind kind);
ProfitKind profit_kind_from_string(std::string_view name);

/// Concave increasing profit function from a closed family with f(0) = 0.
///   linear       p·x
///   quadratic    p·x − q·x²
///   logarithmic  p·ln(1 + x)
///   power        p·x^r,  0 < r < 1
class ProfitFunction {
 public:
  static ProfitFunction linear(double p);
  static ProfitFunction quadratic(double p, double q);
  static ProfitFunction logarithmic(double p);
  static ProfitFunction power(double p, double r);

  ProfitKind kind() const { return kind_; }
  double p() const { return p_; }
  // q for quadratic, r for power, 0 otherwise.
  double second() const { return s_; }

  double value(double x) const;
  // f'(x); +infinity for the power kind at x = 0.
  double derivative(double x) const;

  bool has_inverse_derivative() const { return kind_ != ProfitKind::linear; }
  // g(y) = (f')^{-1}(y). Accepts y = +inf (returns the smallest x with that slope).
  // Throws std::logic_error for the linear kind.
  double inverse_derivative(double y) const;

  bool operator==(const ProfitFunction&) const = default;

 private:
  ProfitFunction(ProfitKind kind, double p, double s) : kind_(kind), p_(p), s_(s) {}

  ProfitKind kind_ = ProfitKind::linear;
  double p_ = 0.0;
  double s_ = 0.0;
};

}  // namespace sdg
