#pragma once

#include <cstddef>
#include <vector>

#include "kr/space.hpp"

// Hot loops, each in two variants: an OpenMP-parallel one used by default
// and a plain serial reference kept for testing.  Both variants perform the
// same per-output computation in the same order (parallelism is only ever
// over independent output slots; reductions are finished serially), so the
// pair must agree bit-for-bit.  tests/test_kernels.cpp enforces that and
// bench/ compares their throughput.
namespace kr::kernels {

bool openmp_compiled();
int max_threads();
void set_threads(int n);

// Centered ball average of every family member at every point:
//   out[m][x] = f_m(x) + (sum_{y in B(x,r)} (f_m(y) - f_m(x)) w(y)) / mu(B(x,r))
// The centered form keeps constants and singleton balls exact to the bit.
void family_averages_serial(const MetricMeasureSpace& space,
                            const std::vector<std::vector<double>>& members,
                            double r, std::vector<std::vector<double>>& out);
void family_averages_parallel(const MetricMeasureSpace& space,
                              const std::vector<std::vector<double>>& members,
                              double r, std::vector<std::vector<double>>& out);
void family_averages(const MetricMeasureSpace& space,
                     const std::vector<std::vector<double>>& members, double r,
                     std::vector<std::vector<double>>& out);

struct DoublingScan {
  double gamma = 1.0;
  std::size_t point = 0;
  double radius = 1.0;
};

DoublingScan doubling_scan_serial(const MetricMeasureSpace& space);
DoublingScan doubling_scan_parallel(const MetricMeasureSpace& space);
DoublingScan doubling_scan(const MetricMeasureSpace& space);

// max over pairs with positive distance of |f(i) - f(j)| / d(i, j);
// 0 when no such pair exists.
double pairwise_lipschitz_serial(const MetricMeasureSpace& space,
                                 const std::vector<double>& values);
double pairwise_lipschitz_parallel(const MetricMeasureSpace& space,
                                   const std::vector<double>& values);
double pairwise_lipschitz(const MetricMeasureSpace& space,
                          const std::vector<double>& values);

// out[x] = min over anchors a of (value(a) + bound * d(a, x)); anchor points
// themselves receive their given value exactly.
void mcshane_fill_serial(const MetricMeasureSpace& space,
                         const std::vector<std::size_t>& domain,
                         const std::vector<double>& domain_values, double bound,
                         std::vector<double>& out);
void mcshane_fill_parallel(const MetricMeasureSpace& space,
                           const std::vector<std::size_t>& domain,
                           const std::vector<double>& domain_values, double bound,
                           std::vector<double>& out);
void mcshane_fill(const MetricMeasureSpace& space,
                  const std::vector<std::size_t>& domain,
                  const std::vector<double>& domain_values, double bound,
                  std::vector<double>& out);

struct TriangleScan {
  double worst = -1.0;  // max over triples of d(i,j) - d(i,k) - d(k,j)
  std::size_t i = 0, j = 0, k = 0;
};

TriangleScan triangle_scan_serial(const double* dist, std::size_t n);
TriangleScan triangle_scan_parallel(const double* dist, std::size_t n);
TriangleScan triangle_scan(const double* dist, std::size_t n);

}  // namespace kr::kernels
