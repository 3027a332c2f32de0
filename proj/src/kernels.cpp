#include "kr/kernels.hpp"

#include <algorithm>
#include <cstdint>

#include "kr/numerics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kr::kernels {

bool openmp_compiled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace {

// One output column of the averaging kernel.  Shared by both variants so
// serial and parallel runs execute the exact same instruction stream per
// point.
void average_point(const MetricMeasureSpace& space,
                   const std::vector<std::vector<double>>& members, double r,
                   std::size_t x, std::vector<CompensatedSum>& acc,
                   std::vector<std::vector<double>>& out) {
  const std::size_t n = space.size();
  const std::size_t m = members.size();
  acc.assign(m, CompensatedSum{});
  CompensatedSum wsum;
  const auto row = space.dist_row(x);
  for (std::size_t y = 0; y < n; ++y) {
    if (row[y] <= r) {
      const double w = space.weight(y);
      wsum.add(w);
      for (std::size_t k = 0; k < m; ++k)
        acc[k].add((members[k][y] - members[k][x]) * w);
    }
  }
  const double mu = wsum.value();
  for (std::size_t k = 0; k < m; ++k)
    out[k][x] = members[k][x] + acc[k].value() / mu;
}

void size_output(const std::vector<std::vector<double>>& members, std::size_t n,
                 std::vector<std::vector<double>>& out) {
  out.assign(members.size(), std::vector<double>(n, 0.0));
}

struct PointDoubling {
  double gamma = 1.0;
  double radius = 1.0;
  bool any = false;
};

PointDoubling doubling_point(const MetricMeasureSpace& space, std::size_t x) {
  const auto row = space.dist_row(x);
  const std::size_t n = space.size();
  std::vector<double> bp;
  bp.reserve(2 * n);
  for (std::size_t y = 0; y < n; ++y) {
    if (row[y] > 0.0) {
      bp.push_back(row[y]);
      bp.push_back(row[y] * 0.5);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  PointDoubling best;
  auto eval = [&](double r) {
    const double ratio = doubling_ratio(space, x, r);
    if (!best.any || ratio > best.gamma) {
      best.gamma = ratio;
      best.radius = r;
      best.any = true;
    }
  };
  // Ascending radius order; strict improvement keeps the smallest witness.
  for (std::size_t i = 0; i < bp.size(); ++i) {
    eval(bp[i]);
    if (i + 1 < bp.size()) {
      const double mid = 0.5 * (bp[i] + bp[i + 1]);
      if (mid > bp[i] && mid < bp[i + 1]) eval(mid);
    }
  }
  return best;
}

DoublingScan doubling_reduce(const std::vector<PointDoubling>& per) {
  DoublingScan out;
  bool found = false;
  for (std::size_t i = 0; i < per.size(); ++i) {
    if (per[i].any && (!found || per[i].gamma > out.gamma)) {
      out.gamma = per[i].gamma;
      out.point = i;
      out.radius = per[i].radius;
      found = true;
    }
  }
  return out;
}

double lipschitz_row(const MetricMeasureSpace& space,
                     const std::vector<double>& values, std::size_t i) {
  const auto row = space.dist_row(i);
  const std::size_t n = space.size();
  double best = 0.0;
  for (std::size_t j = i + 1; j < n; ++j) {
    const double d = row[j];
    if (d > 0.0) best = std::max(best, std::abs(values[i] - values[j]) / d);
  }
  return best;
}

double mcshane_point(const MetricMeasureSpace& space,
                     const std::vector<std::size_t>& domain,
                     const std::vector<double>& domain_values, double bound,
                     std::size_t x) {
  const auto row = space.dist_row(x);
  double best = kInf;
  for (std::size_t k = 0; k < domain.size(); ++k)
    best = std::min(best, domain_values[k] + bound * row[domain[k]]);
  return best;
}

struct RowTriangle {
  double worst = -kInf;
  std::size_t j = 0, k = 0;
};

RowTriangle triangle_row(const double* dist, std::size_t n, std::size_t i) {
  RowTriangle best;
  for (std::size_t j = i + 1; j < n; ++j) {
    const double dij = dist[i * n + j];
    for (std::size_t k = 0; k < n; ++k) {
      const double v = dij - dist[i * n + k] - dist[k * n + j];
      if (v > best.worst) {
        best.worst = v;
        best.j = j;
        best.k = k;
      }
    }
  }
  return best;
}

}  // namespace

void family_averages_serial(const MetricMeasureSpace& space,
                            const std::vector<std::vector<double>>& members,
                            double r, std::vector<std::vector<double>>& out) {
  const std::size_t n = space.size();
  size_output(members, n, out);
  std::vector<CompensatedSum> acc;
  for (std::size_t x = 0; x < n; ++x) average_point(space, members, r, x, acc, out);
}

void family_averages_parallel(const MetricMeasureSpace& space,
                              const std::vector<std::vector<double>>& members,
                              double r, std::vector<std::vector<double>>& out) {
  const std::int64_t n = static_cast<std::int64_t>(space.size());
  size_output(members, space.size(), out);
#pragma omp parallel
  {
    std::vector<CompensatedSum> acc;
#pragma omp for schedule(static)
    for (std::int64_t x = 0; x < n; ++x)
      average_point(space, members, r, static_cast<std::size_t>(x), acc, out);
  }
}

void family_averages(const MetricMeasureSpace& space,
                     const std::vector<std::vector<double>>& members, double r,
                     std::vector<std::vector<double>>& out) {
  family_averages_parallel(space, members, r, out);
}

DoublingScan doubling_scan_serial(const MetricMeasureSpace& space) {
  const std::size_t n = space.size();
  std::vector<PointDoubling> per(n);
  for (std::size_t x = 0; x < n; ++x) per[x] = doubling_point(space, x);
  return doubling_reduce(per);
}

DoublingScan doubling_scan_parallel(const MetricMeasureSpace& space) {
  const std::int64_t n = static_cast<std::int64_t>(space.size());
  std::vector<PointDoubling> per(space.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x)
    per[static_cast<std::size_t>(x)] = doubling_point(space, static_cast<std::size_t>(x));
  return doubling_reduce(per);
}

DoublingScan doubling_scan(const MetricMeasureSpace& space) {
  return doubling_scan_parallel(space);
}

double pairwise_lipschitz_serial(const MetricMeasureSpace& space,
                                 const std::vector<double>& values) {
  double best = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    best = std::max(best, lipschitz_row(space, values, i));
  return best;
}

double pairwise_lipschitz_parallel(const MetricMeasureSpace& space,
                                   const std::vector<double>& values) {
  const std::int64_t n = static_cast<std::int64_t>(space.size());
  std::vector<double> per(space.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    per[static_cast<std::size_t>(i)] = lipschitz_row(space, values, static_cast<std::size_t>(i));
  double best = 0.0;
  for (double v : per) best = std::max(best, v);
  return best;
}

double pairwise_lipschitz(const MetricMeasureSpace& space,
                          const std::vector<double>& values) {
  return pairwise_lipschitz_parallel(space, values);
}

void mcshane_fill_serial(const MetricMeasureSpace& space,
                         const std::vector<std::size_t>& domain,
                         const std::vector<double>& domain_values, double bound,
                         std::vector<double>& out) {
  const std::size_t n = space.size();
  out.assign(n, 0.0);
  std::vector<std::int64_t> anchor(n, -1);
  for (std::size_t k = 0; k < domain.size(); ++k)
    anchor[domain[k]] = static_cast<std::int64_t>(k);
  for (std::size_t x = 0; x < n; ++x)
    out[x] = anchor[x] >= 0
                 ? domain_values[static_cast<std::size_t>(anchor[x])]
                 : mcshane_point(space, domain, domain_values, bound, x);
}

void mcshane_fill_parallel(const MetricMeasureSpace& space,
                           const std::vector<std::size_t>& domain,
                           const std::vector<double>& domain_values, double bound,
                           std::vector<double>& out) {
  const std::size_t n = space.size();
  out.assign(n, 0.0);
  std::vector<std::int64_t> anchor(n, -1);
  for (std::size_t k = 0; k < domain.size(); ++k)
    anchor[domain[k]] = static_cast<std::int64_t>(k);
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < sn; ++x) {
    const std::size_t ux = static_cast<std::size_t>(x);
    out[ux] = anchor[ux] >= 0
                  ? domain_values[static_cast<std::size_t>(anchor[ux])]
                  : mcshane_point(space, domain, domain_values, bound, ux);
  }
}

void mcshane_fill(const MetricMeasureSpace& space,
                  const std::vector<std::size_t>& domain,
                  const std::vector<double>& domain_values, double bound,
                  std::vector<double>& out) {
  mcshane_fill_parallel(space, domain, domain_values, bound, out);
}

TriangleScan triangle_scan_serial(const double* dist, std::size_t n) {
  TriangleScan best;
  bool found = false;
  for (std::size_t i = 0; i < n; ++i) {
    const RowTriangle row = triangle_row(dist, n, i);
    if (row.worst > -kInf && (!found || row.worst > best.worst)) {
      best.worst = row.worst;
      best.i = i;
      best.j = row.j;
      best.k = row.k;
      found = true;
    }
  }
  return best;
}

TriangleScan triangle_scan_parallel(const double* dist, std::size_t n) {
  std::vector<RowTriangle> per(n);
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < sn; ++i)
    per[static_cast<std::size_t>(i)] = triangle_row(dist, n, static_cast<std::size_t>(i));
  TriangleScan best;
  bool found = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (per[i].worst > -kInf && (!found || per[i].worst > best.worst)) {
      best.worst = per[i].worst;
      best.i = i;
      best.j = per[i].j;
      best.k = per[i].k;
      found = true;
    }
  }
  return best;
}

TriangleScan triangle_scan(const double* dist, std::size_t n) {
  return triangle_scan_parallel(dist, n);
}

}  // namespace kr::kernels
