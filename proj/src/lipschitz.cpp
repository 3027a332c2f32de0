#include "kr/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kr/kernels.hpp"
#include "kr/numerics.hpp"

namespace kr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Weighted mean of f over a point set, centered at `center` so that a
// singleton set reproduces f(center) bit-for-bit.
double centered_mean(const MetricMeasureSpace& space, const std::vector<double>& f,
                     const std::vector<std::size_t>& points, std::size_t center) {
  CompensatedSum diff, wsum;
  for (std::size_t y : points) {
    const double w = space.weight(y);
    wsum.add(w);
    diff.add((f[y] - f[center]) * w);
  }
  return f[center] + diff.value() / wsum.value();
}

}  // namespace

double lipschitz_constant(const LpFunction& f) {
  return kernels::pairwise_lipschitz(f.space(), f.values());
}

LpFunction mcshane_extend(const PartialFunction& partial) {
  require(partial.space != nullptr, "partial function needs a space");
  const auto& space = *partial.space;
  require(!partial.domain.empty(), "extension needs a non-empty domain");
  require(partial.domain.size() == partial.values.size(),
          "domain and value counts differ");
  require(std::isfinite(partial.bound) && partial.bound >= 0.0,
          "Lipschitz bound must be finite and non-negative");
  std::vector<std::uint8_t> seen(space.size(), 0);
  for (std::size_t a : partial.domain) {
    require(a < space.size(), "domain index out of range");
    require(!seen[a], "duplicate domain index " + std::to_string(a));
    seen[a] = 1;
  }
  for (double v : partial.values)
    require(std::isfinite(v), "partial values must be finite");
  for (std::size_t a = 0; a < partial.domain.size(); ++a) {
    for (std::size_t b = a + 1; b < partial.domain.size(); ++b) {
      const double gap = std::abs(partial.values[a] - partial.values[b]);
      const double cap = partial.bound * space.dist(partial.domain[a], partial.domain[b]);
      const double tol =
          1e-12 * std::max(1.0, std::abs(partial.values[a]) + std::abs(partial.values[b]));
      if (gap > cap + tol) {
        throw std::invalid_argument(
            "Lipschitz bound violated on the domain between points " +
            std::to_string(partial.domain[a]) + " and " +
            std::to_string(partial.domain[b]));
      }
    }
  }
  std::vector<double> out;
  kernels::mcshane_fill(space, partial.domain, partial.values, partial.bound, out);
  return {partial.space, std::move(out)};
}

LipschitzClassCheck in_lipschitz_class(const LpFunction& f,
                                       const LipschitzClassSpec& spec) {
  require(std::isfinite(spec.bound) && spec.bound > 0.0,
          "class bound must be positive");
  require(spec.base_point < f.size(), "base point out of range");
  LipschitzClassCheck check;
  check.norm = lp_norm(f, spec.cfg);
  check.lip = lipschitz_constant(f);
  const auto row = f.space().dist_row(spec.base_point);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (row[x] > spec.bound && f[x] != 0.0) {
      if (check.support_violations == 0) check.first_violation = x;
      ++check.support_violations;
    }
  }
  check.member = check.norm <= spec.bound && check.lip <= spec.bound &&
                 check.support_violations == 0;
  return check;
}

LpFunction scale_deformation(const LpFunction& f, const LipschitzClassSpec& spec,
                             double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
  require(spec.bound >= 1.0, "class bound must be >= 1");
  require(in_lipschitz_class(f, spec).member, "function is outside the class");
  const double s = 1.0 - epsilon / spec.bound;
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = s * f[i];
  return {f.space_ptr(), std::move(out)};
}

SpikeReport spike_deformation(const LpFunction& f, const LipschitzClassSpec& spec,
                              double epsilon, std::size_t y0) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
  require(spec.bound >= 1.0, "class bound must be >= 1");
  require(y0 < f.size(), "reference point out of range");
  require(y0 != spec.base_point, "reference point must differ from the base point");
  const auto& space = f.space();
  require(space.dist(spec.base_point, y0) > 0.0,
          "reference point coincides with the base point");
  const auto check = in_lipschitz_class(f, spec);
  require(check.member, "function is outside the class");
  const double n = spec.bound;
  const double m = std::max(check.lip, check.norm);
  require(m < n, "function already saturates the class bound");
  require(epsilon <= n - m, "epsilon exceeds the slack bound - max(lip, norm)");

  const double mu = ball_measure(space, spec.base_point, n);
  const double r1 = std::min({epsilon / (3.0 * n * std::pow(mu, 1.0 / spec.cfg.p)),
                              space.dist(spec.base_point, y0), n});
  const double r2 = (n - m) * r1 / n;

  const auto base_row = space.dist_row(spec.base_point);
  std::vector<std::size_t> domain;
  std::vector<double> domain_values;
  domain.reserve(f.size());
  domain_values.reserve(f.size());
  bool pair_present = false;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const double d = base_row[x];
    if (d <= r2) {
      domain.push_back(x);
      domain_values.push_back(f[spec.base_point] + n * (r2 - d));
      if (x != spec.base_point && d > 0.0) pair_present = true;
    } else if (d > r1) {
      domain.push_back(x);
      domain_values.push_back(f[x]);
    }
  }
  std::vector<double> out;
  kernels::mcshane_fill(space, domain, domain_values, n, out);

  LpFunction result{f.space_ptr(), std::move(out)};
  SpikeReport report{std::move(result), r1, r2, m, 0.0, 0.0, pair_present};
  report.deviation = lp_distance(report.result, f, spec.cfg);
  report.achieved_lip = lipschitz_constant(report.result);
  return report;
}

std::vector<double> assemble_ramp(const MetricMeasureSpace& space,
                                  const std::vector<std::size_t>& centers,
                                  const std::vector<double>& outer_radii,
                                  const std::vector<double>& inner_radii,
                                  const std::vector<double>& levels) {
  require(centers.size() == outer_radii.size() &&
              centers.size() == inner_radii.size() && centers.size() == levels.size(),
          "ramp component lists must have equal length");
  std::vector<double> g(space.size(), 0.0);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    require(centers[i] < space.size(), "ramp center out of range");
    require(inner_radii[i] > 0.0 && inner_radii[i] < outer_radii[i],
            "ramp radii must satisfy 0 < inner < outer");
    const auto row = space.dist_row(centers[i]);
    for (std::size_t y = 0; y < space.size(); ++y) {
      const double d = row[y];
      if (d <= inner_radii[i]) {
        g[y] = levels[i];
      } else if (d <= outer_radii[i]) {
        g[y] = levels[i] -
               levels[i] * (d - inner_radii[i]) / (outer_radii[i] - inner_radii[i]);
      }
    }
  }
  return g;
}

DensityApproximant density_approximant(const LpFunction& f, double epsilon,
                                       const LpConfig& cfg) {
  require(epsilon > 0.0, "epsilon must be positive");
  const auto& space = f.space();
  const std::size_t count = space.size();
  const double target = epsilon / 3.0;

  // Nominal radius ladder: halve from the diameter until balls must be
  // singletons, at which point the approximant reproduces f exactly.
  std::vector<double> nominal;
  double radius = space.diameter();
  if (radius <= 0.0 || !std::isfinite(space.min_separation())) {
    nominal.push_back(0.0);  // singleton pass only
  } else {
    while (radius >= space.min_separation()) {
      nominal.push_back(radius);
      radius *= 0.5;
    }
    nominal.push_back(0.0);
  }

  DensityApproximant best;
  for (double nominal_radius : nominal) {
    std::vector<std::size_t> centers;
    std::vector<double> outer, inner, levels;
    std::vector<std::uint8_t> blocked(count, 0);
    for (std::size_t x = 0; x < count; ++x) {
      if (blocked[x]) continue;
      const auto row = space.dist_row(x);
      // Largest ladder distance from x not exceeding the nominal radius,
      // then a radius strictly inside the following gap: the snapped outer
      // and inner radii then carry the same point set.
      double dstar = 0.0;
      for (std::size_t y = 0; y < count; ++y)
        if (y != x && row[y] > 0.0 && row[y] <= nominal_radius)
          dstar = std::max(dstar, row[y]);
      double next = kInf;
      for (std::size_t y = 0; y < count; ++y)
        if (y != x && row[y] > dstar) next = std::min(next, row[y]);
      const double r_out = std::isfinite(next) ? dstar + (next - dstar) * 0.5
                                               : dstar + 1.0;
      const double r_in = dstar + (r_out - dstar) * 0.5;

      std::vector<std::size_t> members;
      bool overlap = false;
      for (std::size_t y = 0; y < count; ++y) {
        if (row[y] <= r_out) {
          if (blocked[y]) {
            overlap = true;
            break;
          }
          members.push_back(y);
        }
      }
      if (overlap) continue;
      for (std::size_t y : members) blocked[y] = 1;
      const double level = centered_mean(space, f.values(), members, x);
      if (level == 0.0) continue;
      centers.push_back(x);
      outer.push_back(r_out);
      inner.push_back(r_in);
      levels.push_back(level);
    }

    auto g = assemble_ramp(space, centers, outer, inner, levels);
    CompensatedSum err;
    for (std::size_t i = 0; i < count; ++i)
      err.add(abs_pow(g[i] - f[i], cfg.p) * space.weight(i));
    const double achieved = root_p(err.value(), cfg.p);
    if (achieved <= target) {
      best.centers = std::move(centers);
      best.outer_radii = std::move(outer);
      best.inner_radii = std::move(inner);
      best.levels = std::move(levels);
      best.g = std::move(g);
      best.achieved_error = achieved;
      best.lip = kernels::pairwise_lipschitz(space, best.g);
      return best;
    }
  }
  throw std::runtime_error("approximant refinement did not converge");
}

}  // namespace kr
