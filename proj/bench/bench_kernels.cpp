// Throughput comparison of the serial reference kernels against the
// parallel defaults, with a bit-identity check on every pair.  Exit code 1
// if any pair disagrees.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "kr/generators.hpp"
#include "kr/kernels.hpp"
#include "kr/numerics.hpp"
#include "kr/space.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_ms(F&& body, int reps = 3) {
  double best = kr::kInf;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    body();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool g_all_identical = true;

void report(const std::string& name, double serial_ms, double parallel_ms,
            bool identical) {
  g_all_identical = g_all_identical && identical;
  std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n",
              name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("openmp: %s, threads: %d\n",
              kr::kernels::openmp_compiled() ? "on" : "off",
              kr::kernels::max_threads());

  {
    auto space = kr::make_circle_grid(2048);
    std::vector<std::vector<double>> members;
    for (std::size_t m = 0; m < 16; ++m)
      members.push_back(kr::random_function(space, 1.0, 100 + m).values());
    std::vector<std::vector<double>> a, b;
    const double serial = best_ms(
        [&] { kr::kernels::family_averages_serial(*space, members, 0.05, a); });
    const double parallel = best_ms(
        [&] { kr::kernels::family_averages_parallel(*space, members, 0.05, b); });
    report("family_averages", serial, parallel, a == b);
  }

  {
    auto space = kr::make_random_cloud(400, 2, 7);
    kr::kernels::DoublingScan a, b;
    const double serial =
        best_ms([&] { a = kr::kernels::doubling_scan_serial(*space); });
    const double parallel =
        best_ms([&] { b = kr::kernels::doubling_scan_parallel(*space); });
    report("doubling_scan", serial, parallel,
           a.gamma == b.gamma && a.point == b.point && a.radius == b.radius);
  }

  {
    auto space = kr::make_circle_grid(4096);
    const auto values = kr::random_function(space, 1.0, 11).values();
    double a = 0.0, b = 0.0;
    const double serial =
        best_ms([&] { a = kr::kernels::pairwise_lipschitz_serial(*space, values); });
    const double parallel =
        best_ms([&] { b = kr::kernels::pairwise_lipschitz_parallel(*space, values); });
    report("pairwise_lipschitz", serial, parallel, a == b);
  }

  {
    auto space = kr::make_circle_grid(4096);
    const auto partial = kr::random_partial(space, 64, 2.0, 13);
    std::vector<double> a, b;
    const double serial = best_ms([&] {
      kr::kernels::mcshane_fill_serial(*space, partial.domain, partial.values,
                                       partial.bound, a);
    });
    const double parallel = best_ms([&] {
      kr::kernels::mcshane_fill_parallel(*space, partial.domain, partial.values,
                                         partial.bound, b);
    });
    report("mcshane_fill", serial, parallel, a == b);
  }

  {
    auto space = kr::make_random_cloud(400, 3, 23);
    kr::kernels::TriangleScan a, b;
    const double serial = best_ms(
        [&] { a = kr::kernels::triangle_scan_serial(space->dist_row(0).data(), space->size()); });
    const double parallel = best_ms(
        [&] { b = kr::kernels::triangle_scan_parallel(space->dist_row(0).data(), space->size()); });
    report("triangle_scan", serial, parallel,
           a.worst == b.worst && a.i == b.i && a.j == b.j && a.k == b.k);
  }

  return g_all_identical ? 0 : 1;
}
