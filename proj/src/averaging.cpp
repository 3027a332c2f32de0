#include "kr/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "kr/kernels.hpp"
#include "kr/numerics.hpp"

namespace kr {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double deviation_norm(const MetricMeasureSpace& space,
                      const std::vector<double>& averaged,
                      const std::vector<double>& original, const LpConfig& cfg) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < original.size(); ++i)
    sum.add(abs_pow(averaged[i] - original[i], cfg.p) * space.weight(i));
  return root_p(sum.value(), cfg.p);
}

}  // namespace

LpFunction average(const LpFunction& f, double radius) {
  require(radius > 0.0, "averaging radius must be positive");
  std::vector<std::vector<double>> in{f.values()}, out;
  kernels::family_averages(f.space(), in, radius, out);
  return {f.space_ptr(), std::move(out[0])};
}

std::vector<std::vector<double>> family_average_values(const FunctionFamily& family,
                                                       double radius) {
  require(radius > 0.0, "averaging radius must be positive");
  std::vector<std::vector<double>> out;
  kernels::family_averages(family.space(), family.member_values(), radius, out);
  return out;
}

PointwiseBoundReport pointwise_bound_check(const LpFunction& f, double radius,
                                           const LpConfig& cfg) {
  require(radius > 0.0, "radius must be positive");
  const auto& space = f.space();
  const std::size_t n = space.size();
  const LpFunction averaged = average(f, radius);
  std::vector<double> slack(n, 0.0);
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t sx = 0; sx < sn; ++sx) {
    const std::size_t x = static_cast<std::size_t>(sx);
    CompensatedSum power, mu;
    const auto row = space.dist_row(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (row[y] <= radius) {
        power.add(abs_pow(f[y], cfg.p) * space.weight(y));
        mu.add(space.weight(y));
      }
    }
    const double local_norm = root_p(power.value(), cfg.p);
    slack[x] = local_norm * std::pow(mu.value(), -1.0 / cfg.p) - std::abs(averaged[x]);
  }
  PointwiseBoundReport report{slack.empty() ? 0.0 : slack[0], 0};
  for (std::size_t x = 1; x < n; ++x) {
    if (slack[x] < report.min_slack) {
      report.min_slack = slack[x];
      report.witness = x;
    }
  }
  return report;
}

double norm_bound_check(const LpFunction& f, double radius, const LpConfig& cfg,
                        double gamma) {
  require(radius > 0.0, "radius must be positive");
  require(gamma >= 1.0, "doubling constant must be >= 1");
  const LpFunction averaged = average(f, radius);
  return std::pow(gamma, 1.0 / cfg.p) * lp_norm(f, cfg) - lp_norm(averaged, cfg);
}

AverageProfile differentiation_profile(const FunctionFamily& family,
                                       std::vector<double> radii,
                                       const LpConfig& cfg) {
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  for (double r : radii) require(r > 0.0, "profile radii must be positive");
  AverageProfile profile;
  profile.radii = radii;
  profile.deviations.reserve(radii.size());
  for (double r : radii) {
    const auto averaged = family_average_values(family, r);
    std::vector<double> devs(family.count(), 0.0);
    for (std::size_t m = 0; m < family.count(); ++m)
      devs[m] = deviation_norm(family.space(), averaged[m],
                               family.member_values()[m], cfg);
    profile.deviations.push_back(std::move(devs));
  }
  return profile;
}

double equicontinuity_modulus(const FunctionFamily& family, double radius,
                              std::size_t x, std::size_t y) {
  require(x < family.space().size() && y < family.space().size(),
          "point index out of range");
  const auto averaged = family_average_values(family, radius);
  double best = 0.0;
  for (std::size_t m = 0; m < family.count(); ++m)
    best = std::max(best, std::abs(averaged[m][x] - averaged[m][y]));
  return best;
}

}  // namespace kr
