#include "sdg/lli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdg/errors.hpp"
#include "sdg/hydrology.hpp"
#include "sdg/tolerance.hpp"

namespace sdg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_amb(double lhs, double rhs) {
  if (std::isinf(lhs) || std::isinf(rhs)) return lhs == rhs;
  return std::fabs(lhs - rhs) <= tol::kAmbRelative * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

class LayerSolver {
 public:
  LayerSolver(const Instance& inst, const SubProblem& prob, bool record)
      : inst_(inst), prob_(prob), record_(record), lo_(prob.span.first), len_(prob.span.size()) {
    const auto n = static_cast<std::size_t>(len_);
    if (prob.roles.size() != n || prob.lower.size() != n || prob.upper.size() != n ||
        prob.fixed.size() != n)
      throw Error(errc::kInternal, "sub-problem vectors do not match the span");
    // rate_[j][m] = K_{lo+j}^{lo+m} for m >= j.
    rate_.assign(n, std::vector<double>(n, 0.0));
    for (int j = 0; j < len_; ++j) {
      rate_[j][j] = 1.0;
      for (int m = j + 1; m < len_; ++m) rate_[j][m] = rate_[j][m - 1] * inst.k(lo_ + m - 1);
    }
    weight_.resize(n);
    double w = residual_rate(1, lo_, inst);
    for (int j = 0; j < len_; ++j) {
      weight_[j] = w;
      w *= inst.k(lo_ + j);
    }
    x_.resize(n);
    frozen_.assign(n, false);
    for (int j = 0; j < len_; ++j) {
      if (prob.roles[j] == NodeRole::fixed) {
        x_[j] = prob.fixed[j];
        frozen_[j] = true;
      } else {
        x_[j] = prob.lower[j];
      }
    }
  }

  LliResult run() {
    check_start();
    LliResult result;
    if (len_ == 1 && prob_.roles[0] != NodeRole::fixed) {
      const double room = inst_.b(lo_) - prob_.start_level;
      x_[0] = std::clamp(std::min(prob_.upper[0], room), prob_.lower[0], prob_.upper[0]);
      result.iterations = 1;
    } else {
      const int limit = 4 * len_ + 8;
      while (std::find(frozen_.begin(), frozen_.end(), false) != frozen_.end()) {
        if (++result.iterations > limit)
          throw Error(errc::kInternal, "layer solver failed to terminate");
        LliIteration it = step();
        if (record_) {
          it.x = x_;
          result.trace.push_back(std::move(it));
        }
      }
    }
    result.plan = {prob_.span, prob_.start_level, x_};
    return result;
  }

 private:
  double amb_at(int j, double x) const { return weight_[j] * inst_.f(lo_ + j).derivative(x); }

  std::vector<double> slack() const {
    std::vector<double> s(static_cast<std::size_t>(len_));
    double incoming = prob_.start_level;
    for (int j = 0; j < len_; ++j) {
      const double c = incoming + x_[j];
      s[j] = inst_.b(lo_ + j) - c;
      incoming = inst_.k(lo_ + j) * c;
    }
    return s;
  }

  void check_start() const {
    const auto s = slack();
    for (int j = 0; j < len_; ++j) {
      if (s[j] < -tol::kPollution) {
        std::ostringstream msg;
        msg << "starting plan exceeds the tolerance of node " << lo_ + j << " by " << -s[j];
        throw Error(errc::kInfeasibleBaseline, msg.str());
      }
    }
  }

  // Freezes every open node up to the most downstream tight node at or after `from`.
  void freeze_through_tight(int from, const std::vector<double>& hint, LliIteration& it) {
    const auto s = slack();
    int tight = -1;
    for (int m = len_ - 1; m >= from; --m) {
      if (s[m] <= tol::kPollution) {
        tight = m;
        break;
      }
    }
    if (tight < 0) {
      tight = from;
      for (int m = from; m < len_; ++m)
        if (hint[m] > hint[tight]) tight = m;
    }
    for (int j = 0; j <= tight; ++j) freeze(j, it);
  }

  void freeze(int j, LliIteration& it) {
    if (frozen_[j]) return;
    frozen_[j] = true;
    it.frozen.push_back(lo_ + j);
  }

  LliIteration step() {
    LliIteration it;
    int single = -1;
    for (int j = 0; j < len_ && single < 0; ++j)
      if (!frozen_[j] && prob_.roles[j] == NodeRole::priority) single = j;

    std::vector<int> layer;
    if (single < 0) {
      double best = -kInf;
      for (int j = 0; j < len_; ++j)
        if (!frozen_[j]) best = std::max(best, amb_at(j, x_[j]));
      for (int j = 0; j < len_; ++j)
        if (!frozen_[j] && same_amb(amb_at(j, x_[j]), best)) layer.push_back(j);
      for (int j : layer) {
        if (!inst_.f(lo_ + j).has_inverse_derivative()) {
          single = j;
          break;
        }
      }
    }
    if (single >= 0) {
      it.layer = {lo_ + single};
      advance_single(single, it);
    } else {
      for (int j : layer) it.layer.push_back(lo_ + j);
      advance_layer(layer, it);
    }
    return it;
  }

  // One node alone discharges as much as its bound and the tolerances allow.
  void advance_single(int i, LliIteration& it) {
    const auto s = slack();
    const double sigma2 = prob_.upper[i] - x_[i];
    double sigma3 = kInf;
    std::vector<double> pressure(static_cast<std::size_t>(len_), -kInf);
    for (int m = i; m < len_; ++m) {
      const double room = std::max(0.0, s[m]) / rate_[i][m];
      sigma3 = std::min(sigma3, room);
      pressure[m] = -room;
    }
    const double delta = std::max(0.0, std::min(sigma2, sigma3));
    it.sigma1 = kInf;
    it.sigma2 = sigma2;
    it.sigma3 = sigma3;
    it.step = delta;
    x_[i] = std::min(prob_.upper[i], x_[i] + delta);
    const double tie = 1e-12 * (1.0 + delta);
    if (sigma2 <= delta + tie) {
      x_[i] = prob_.upper[i];
      freeze(i, it);
    }
    if (sigma3 <= delta + tie) freeze_through_tight(i, pressure, it);
  }

  // Node values along the layer path after anchor increment t.
  void layer_point(const std::vector<int>& layer, double t, std::vector<double>& out) const {
    out = x_;
    const int anchor = layer.front();
    const double lambda = amb_at(anchor, x_[anchor] + t);
    out[anchor] = x_[anchor] + t;
    for (std::size_t q = 1; q < layer.size(); ++q) {
      const int j = layer[q];
      const double target = inst_.f(lo_ + j).inverse_derivative(lambda / weight_[j]);
      out[j] = std::max(x_[j], target);
    }
  }

  // Largest violation max_m (Δc_m − slack_m) over m >= from.
  double overflow(const std::vector<double>& point, const std::vector<double>& s, int from,
                  std::vector<double>* per_node = nullptr) const {
    double worst = -kInf;
    double dc = 0.0;
    for (int m = 0; m < len_; ++m) {
      dc = (m == 0 ? 0.0 : inst_.k(lo_ + m - 1) * dc) + (point[m] - x_[m]);
      if (m >= from) {
        const double over = dc - std::max(0.0, s[m]);
        worst = std::max(worst, over);
        if (per_node) (*per_node)[m] = over;
      }
    }
    return worst;
  }

  void advance_layer(const std::vector<int>& layer, LliIteration& it) {
    const int anchor = layer.front();
    const ProfitFunction& fa = inst_.f(lo_ + anchor);
    const auto s = slack();

    double sigma1 = 0.0;
    double xi = -kInf;
    bool outside = false;
    for (int j = 0; j < len_; ++j) {
      if (frozen_[j] || std::find(layer.begin(), layer.end(), j) != layer.end()) continue;
      outside = true;
      xi = std::max(xi, amb_at(j, x_[j]));
    }
    if (outside) {
      sigma1 = std::max(0.0, fa.inverse_derivative(xi / weight_[anchor]) - x_[anchor]);
    } else {
      double widest = 0.0;
      for (int j = 0; j < len_; ++j) widest = std::max(widest, prob_.upper[j] - prob_.lower[j]);
      sigma1 = 1.0 + widest;
    }

    int jstar = layer.front();
    double lambda2 = -kInf;
    for (int j : layer) {
      const double at_cap = amb_at(j, prob_.upper[j]);
      if (at_cap > lambda2) {
        lambda2 = at_cap;
        jstar = j;
      }
    }
    const double anchor_room = prob_.upper[anchor] - x_[anchor];
    double sigma2 = jstar == anchor ? anchor_room
                                    : fa.inverse_derivative(lambda2 / weight_[anchor]) - x_[anchor];
    sigma2 = std::clamp(sigma2, 0.0, anchor_room);

    const double reach = std::min(sigma1, sigma2);
    std::vector<double> point;
    double sigma3 = kInf;
    layer_point(layer, reach, point);
    if (overflow(point, s, anchor) > 0.0) {
      double a = 0.0;
      double b = reach;
      for (int rep = 0; rep < 200 && b - a > 1e-15 * (1.0 + reach); ++rep) {
        const double mid = 0.5 * (a + b);
        layer_point(layer, mid, point);
        (overflow(point, s, anchor) > 0.0 ? b : a) = mid;
      }
      sigma3 = a;
    }

    const double delta = std::min({sigma1, sigma2, sigma3});
    it.sigma1 = sigma1;
    it.sigma2 = sigma2;
    it.sigma3 = sigma3;
    it.step = delta;

    std::vector<double> pressure(static_cast<std::size_t>(len_), -kInf);
    layer_point(layer, delta, point);
    if (sigma3 <= delta) {
      std::vector<double> beyond;
      layer_point(layer, std::min(reach, delta + 1e-9 * (1.0 + delta)), beyond);
      overflow(beyond, s, anchor, &pressure);
    }
    for (int j : layer) x_[j] = std::clamp(point[j], prob_.lower[j], prob_.upper[j]);

    const double tie = 1e-12 * (1.0 + delta);
    if (sigma2 <= delta + tie) {
      x_[jstar] = prob_.upper[jstar];
      freeze(jstar, it);
      for (int j : layer) {
        if (!frozen_[j] && x_[j] >= prob_.upper[j] - 1e-12 * (1.0 + prob_.upper[j])) {
          x_[j] = prob_.upper[j];
          freeze(j, it);
        }
      }
    }
    if (sigma3 <= delta + tie) freeze_through_tight(anchor, pressure, it);
  }

  const Instance& inst_;
  const SubProblem& prob_;
  bool record_;
  int lo_;
  int len_;
  std::vector<std::vector<double>> rate_;
  std::vector<double> weight_;
  std::vector<double> x_;
  std::vector<bool> frozen_;
};

}  // namespace

SubProblem SubProblem::consecutive(const Instance& inst, double start_level, Interval span) {
  SubProblem p;
  p.span = span;
  p.start_level = start_level;
  for (int i = span.first; i <= span.last; ++i) {
    p.roles.push_back(NodeRole::free);
    p.lower.push_back(inst.a(i));
    p.upper.push_back(inst.u(i));
    p.fixed.push_back(0.0);
  }
  return p;
}

double amb(int i, double x, const Instance& inst) {
  return residual_rate(1, i, inst) * inst.f(i).derivative(x);
}

LliResult run_lli(const Instance& inst, const SubProblem& problem, bool record_trace) {
  if (problem.span.first < 1 || problem.span.last > inst.n() || problem.span.size() < 1)
    throw Error(errc::kIndexOutOfRange, "span outside the instance");
  return LayerSolver(inst, problem, record_trace).run();
}

SdpSolution solve_sdp(const Instance& inst, double start_level, Interval span, bool record_trace) {
  LliResult r = run_lli(inst, SubProblem::consecutive(inst, start_level, span), record_trace);
  SdpSolution sol;
  sol.value = plan_value(r.plan, Coalition::interval(span.first, span.last), inst);
  sol.plan = std::move(r.plan);
  sol.iterations = r.iterations;
  sol.trace = std::move(r.trace);
  return sol;
}

SdpSolution solve_grand(const Instance& inst, bool record_trace) {
  return solve_sdp(inst, inst.b0(), {1, inst.n()}, record_trace);
}

std::vector<OptimalityViolation> verify_optimality(const DischargePlan& plan, const Instance& inst) {
  std::vector<OptimalityViolation> out;
  const MyopicProfile prof = myopic_profile(inst, plan.start_level, plan.span);
  const std::vector<double> c = pollution_profile(plan, inst);
  auto near = [](double lhs, double rhs) { return std::fabs(lhs - rhs) <= tol::kPollution; };
  const int lo = plan.span.first;
  const int hi = plan.span.last;

  for (int i = lo; i <= hi; ++i) {
    const double ci = c[i - lo];
    const double di = prof.d_at(i);
    if (i < hi && ci > di + tol::kPollution) {
      std::ostringstream msg;
      msg << "c = " << ci << " exceeds d = " << di;
      out.push_back({i, 0, "level", msg.str()});
    }
    if (i == hi && !near(ci, di)) {
      std::ostringstream msg;
      msg << "terminal c = " << ci << " differs from d = " << di;
      out.push_back({i, 0, "terminal-level", msg.str()});
    }
  }

  for (int i = lo; i < hi; ++i) {
    const double lhs = inst.f(i).derivative(plan.at(i));
    const double rhs = inst.k(i) * inst.f(i + 1).derivative(plan.at(i + 1));
    if (same_amb(lhs, rhs)) continue;
    std::ostringstream msg;
    msg << "f'_" << i << " = " << lhs << ", k f'_" << i + 1 << " = " << rhs;
    if (lhs < rhs) {
      if (!near(plan.at(i), inst.a(i)) && !near(plan.at(i + 1), inst.u(i + 1)))
        out.push_back({i, i + 1, "marginal-upstream", msg.str()});
    } else {
      if (!near(c[i - lo], prof.d_at(i)) && !near(plan.at(i), inst.u(i)) &&
          !near(plan.at(i + 1), inst.a(i + 1)))
        out.push_back({i, i + 1, "marginal-downstream", msg.str()});
    }
  }
  return out;
}

std::vector<int> find_decomposition_points(const DischargePlan& plan, const Instance& inst) {
  const MyopicProfile prof = myopic_profile(inst, plan.start_level, plan.span);
  const std::vector<double> c = pollution_profile(plan, inst);
  std::vector<int> out;
  for (int i = plan.span.first; i < plan.span.last; ++i)
    if (std::fabs(c[i - plan.span.first] - prof.d_at(i)) <= tol::kPollution) out.push_back(i);
  return out;
}

}  // namespace sdg
