#include "sdg/hydrology.hpp"

#include <algorithm>

#include "sdg/errors.hpp"

namespace sdg {

double residual_rate(int i1, int i2, const Instance& inst) {
  if (i1 < 0 || i2 > inst.n() || i1 > i2)
    throw Error(errc::kIndexOutOfRange,
                "residual rate (" + std::to_string(i1) + "," + std::to_string(i2) + ")");
  double r = 1.0;
  for (int i = i1; i < i2; ++i) r *= inst.k(i);
  return r;
}

MyopicProfile myopic_profile(const Instance& inst, double start_level, Interval span) {
  MyopicProfile prof;
  prof.span = span;
  prof.start_level = start_level;
  double incoming = start_level;
  for (int i = span.first; i <= span.last; ++i) {
    const double d = std::min(inst.u(i) + incoming, inst.b(i));
    prof.d.push_back(d);
    prof.theta.push_back(d - incoming);
    incoming = inst.k(i) * d;
  }
  return prof;
}

MyopicProfile grand_myopic_profile(const Instance& inst) {
  return myopic_profile(inst, inst.b0(), {1, inst.n()});
}

std::vector<double> pollution_profile(const DischargePlan& plan, const Instance& inst) {
  std::vector<double> c;
  c.reserve(plan.x.size());
  double incoming = plan.start_level;
  for (int i = plan.span.first; i <= plan.span.last; ++i) {
    const double ci = incoming + plan.at(i);
    c.push_back(ci);
    incoming = inst.k(i) * ci;
  }
  return c;
}

std::vector<double> pollution_profile_closed_form(const DischargePlan& plan, const Instance& inst) {
  std::vector<double> c;
  const int lo = plan.span.first;
  for (int i = lo; i <= plan.span.last; ++i) {
    double ci = residual_rate(lo, i, inst) * plan.start_level;
    for (int j = lo; j <= i; ++j) ci += residual_rate(j, i, inst) * plan.at(j);
    c.push_back(ci);
  }
  return c;
}

DischargePlan myopic_plan(const MyopicProfile& profile) {
  return {profile.span, profile.start_level, profile.theta};
}

}  // namespace sdg
