// Serial vs OpenMP timings for the table build, core scan and vertex enumeration.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef SDG_HAVE_OPENMP
#include <omp.h>
#endif

#include "sdg/core.hpp"
#include "sdg/game.hpp"

namespace {

sdg::Instance river(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  sdg::RawInstance raw;
  raw.b0 = 0.5;
  double level = raw.b0;
  for (int i = 0; i < n; ++i) {
    sdg::NodeParams nd;
    nd.k = 0.6 + 0.4 * unit(rng);
    nd.a = 0.0;
    nd.u = 2.0 + 4.0 * unit(rng);
    nd.b = level + (0.4 + unit(rng)) * nd.u;
    const double p = 5.0 + 15.0 * unit(rng);
    nd.f = sdg::ProfitFunction::quadratic(p, (0.1 + 0.9 * unit(rng)) * p / (2.0 * nd.u));
    raw.nodes.push_back(nd);
    level = nd.k * nd.b;
  }
  return sdg::make_instance(raw);
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 12;
  int threads = 1;
#ifdef SDG_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif
  const sdg::CoalitionSolver solver(river(n, 2024));
  std::printf("n = %d, threads = %d\n", n, threads);

  sdg::GameTable serial, parallel;
  const double ts = seconds([&] { serial = sdg::build_table_serial(solver, 24); });
  const double tp = seconds([&] { parallel = sdg::build_table(solver, 24); });
  double worst = 0.0;
  for (std::uint64_t m = 1; m <= serial.grand_mask(); ++m)
    worst = std::max(worst, std::abs(serial.value(m) - parallel.value(m)));
  std::printf("table build       serial %8.3f s  parallel %8.3f s  max diff %.1e\n", ts, tp, worst);

  const sdg::Allocation alpha = sdg::downstream_incremental(parallel);
  sdg::CoreReport rs, rp;
  const double cs = seconds([&] { rs = sdg::core_membership_serial(alpha, parallel); });
  const double cp = seconds([&] { rp = sdg::core_membership(alpha, parallel); });
  std::printf("core membership   serial %8.3f s  parallel %8.3f s  verdicts %d/%d\n", cs, cp, rs.member, rp.member);

  std::vector<sdg::Allocation> vs, vp;
  const double es = seconds([&] { vs = sdg::all_psi_vertices_serial(parallel); });
  const double ep = seconds([&] { vp = sdg::all_psi_vertices(parallel); });
  std::printf("psi vertices      serial %8.3f s  parallel %8.3f s  count %zu\n", es, ep, vp.size());
  return 0;
}
