#include "fixtures.hpp"

namespace sdg::testkit {

namespace {

NodeParams node(double b, double u, ProfitFunction f) {
  NodeParams p;
  p.b = b;
  p.k = 1.0;
  p.a = 0.0;
  p.u = u;
  p.f = f;
  return p;
}

}  // namespace

Instance three_node() {
  RawInstance raw;
  raw.b0 = 0.0;
  raw.nodes = {node(3, 3, ProfitFunction::quadratic(20, 2)), node(7, 4, ProfitFunction::quadratic(10, 1)),
               node(10, 5, ProfitFunction::quadratic(20, 1))};
  return make_instance(raw);
}

Instance nine_node(double u9) {
  // Even nodes never join the worked coalitions; any increasing profit will do.
  const ProfitFunction filler = ProfitFunction::linear(1.0);
  RawInstance raw;
  raw.b0 = 0.0;
  raw.nodes = {node(5, 5, ProfitFunction::linear(3)),        node(10, 6, filler),
               node(15, 5, ProfitFunction::quadratic(10, 1)), node(20, 6, filler),
               node(25, 5, ProfitFunction::quadratic(20, 2)), node(30, 6, filler),
               node(35, 6, ProfitFunction::quadratic(20, 1)), node(40, 6, filler),
               node(45, u9, ProfitFunction::quadratic(40, 1))};
  return make_instance(raw);
}

}  // namespace sdg::testkit
