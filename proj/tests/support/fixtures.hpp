#pragma once

#include "sdg/instance.hpp"

namespace sdg::testkit {

// b = (3,7,10), u = (3,4,5), quadratic profits (20,2), (10,1), (20,1).
Instance three_node();
// Nine-node river with b_i = 5i; u9 is 6 or 11 in the worked cases.
Instance nine_node(double u9);

}  // namespace sdg::testkit
