#include "kr/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "kr/averaging.hpp"
#include "kr/numerics.hpp"

namespace kr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// ||values restricted to `domain` - element||_p, summed in point order.
double masked_distance(const MetricMeasureSpace& space, const PointSet& domain,
                       const std::vector<double>& values,
                       const std::vector<double>& element, double p) {
  CompensatedSum acc;
  for (std::size_t y = 0; y < space.size(); ++y) {
    const double a = domain.contains(y) ? values[y] : 0.0;
    acc.add(abs_pow(a - element[y], p) * space.weight(y));
  }
  return root_p(acc.value(), p);
}

}  // namespace

std::vector<double> dyadic_radius_grid(const MetricMeasureSpace& space) {
  const double diam = space.diameter();
  const double minsep = space.min_separation();
  if (diam <= 0.0 || !std::isfinite(minsep)) return {1.0};
  std::vector<double> grid;
  double r = diam;
  while (r >= minsep) {
    grid.push_back(r);
    r *= 0.5;
  }
  grid.push_back(r);  // first value below the separation: zero deviation
  std::reverse(grid.begin(), grid.end());
  return grid;
}

std::vector<TailCandidate> ball_exhaustion(const MetricMeasureSpace& space,
                                           std::size_t base_point,
                                           double radius_cap) {
  require(base_point < space.size(), "base point out of range");
  require(radius_cap > 0.0, "radius cap must be positive");
  const double diam = space.diameter();
  const double minsep = space.min_separation();
  std::vector<TailCandidate> out;
  if (diam <= 0.0 || !std::isfinite(minsep)) {
    out.push_back({1.0, PointSet::all(space.size())});
    return out;
  }
  const int k_lo = static_cast<int>(std::floor(std::log2(minsep)));
  const int k_hi = static_cast<int>(std::ceil(std::log2(diam)));
  for (int k = k_lo; k <= k_hi; ++k) {
    const double r = std::ldexp(1.0, k);
    if (r > radius_cap) break;
    out.push_back({r, ball(space, base_point, r)});
  }
  require(!out.empty(), "radius cap excludes every exhaustion candidate");
  return out;
}

AvgConditionResult check_condition_avg(const FunctionFamily& family,
                                       double epsilon,
                                       const std::vector<double>& radius_grid,
                                       const LpConfig& cfg) {
  require(epsilon > 0.0, "budget must be positive");
  require(!radius_grid.empty(), "radius grid is empty");
  require(std::is_sorted(radius_grid.begin(), radius_grid.end()),
          "radius grid must be ascending");
  require(radius_grid.front() > 0.0, "radii must be positive");

  const auto profile = differentiation_profile(family, radius_grid, cfg);
  AvgConditionResult res;
  res.radii = profile.radii;
  res.max_deviation.reserve(profile.radii.size());
  for (const auto& devs : profile.deviations)
    res.max_deviation.push_back(*std::max_element(devs.begin(), devs.end()));

  std::size_t first_fail = res.radii.size();
  for (std::size_t i = 0; i < res.radii.size(); ++i) {
    if (res.max_deviation[i] >= epsilon) {
      first_fail = i;
      break;
    }
  }
  if (first_fail == 0) {
    res.passed = false;
    const auto& devs = profile.deviations[0];
    const std::size_t worst =
        static_cast<std::size_t>(std::max_element(devs.begin(), devs.end()) - devs.begin());
    res.witness = {worst, res.radii[0], devs[worst]};
  } else {
    res.passed = true;
    res.delta = first_fail == res.radii.size() ? res.radii.back() : res.radii[first_fail];
  }
  return res;
}

TailConditionResult check_condition_tail(const FunctionFamily& family,
                                         double epsilon,
                                         const std::vector<TailCandidate>& candidates,
                                         const LpConfig& cfg) {
  require(epsilon > 0.0, "budget must be positive");
  require(!candidates.empty(), "no tail candidates supplied");
  for (std::size_t i = 1; i < candidates.size(); ++i)
    require(candidates[i - 1].radius <= candidates[i].radius,
            "tail candidates must grow with radius");

  TailConditionResult res;
  const std::size_t members = family.count();
  for (const auto& cand : candidates) {
    double worst_value = -1.0;
    std::size_t worst_member = 0;
    std::vector<double> tails(members);
#pragma omp parallel for schedule(static)
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(members); ++m)
      tails[static_cast<std::size_t>(m)] =
          tail_norm(family.member(static_cast<std::size_t>(m)), cand.set, cfg);
    for (std::size_t m = 0; m < members; ++m) {
      if (tails[m] > worst_value) {
        worst_value = tails[m];
        worst_member = m;
      }
    }
    res.candidate_radii.push_back(cand.radius);
    res.max_tail.push_back(worst_value);
    if (worst_value < epsilon) {
      res.passed = true;
      res.radius = cand.radius;
      res.set = cand.set;
      return res;
    }
    res.witness = {worst_member, cand.radius, worst_value};
    res.radius = cand.radius;
  }
  res.passed = false;
  return res;
}

VitaliSelection vitali_selection(const MetricMeasureSpace& space,
                                 const PointSet& domain,
                                 const std::vector<double>& deltas,
                                 double residual_target) {
  require(domain.size() == space.size(), "domain mask size mismatch");
  require(!domain.empty(), "domain is empty");
  require(deltas.size() == space.size(), "one delta per point required");
  require(residual_target > 0.0, "residual target must be positive");
  const auto points = domain.indices();
  for (std::size_t x : points)
    require(deltas[x] > 0.0, "delta must be positive on the domain");

  const double minsep = space.min_separation();
  const std::size_t n = space.size();

  // Initial candidate radius per domain point: the largest distance from it
  // that stays below delta, else the singleton floor.
  std::vector<double> candidate(n, 0.0), floor_radius(n, 0.0);
  for (std::size_t x : points) {
    double fl = std::min(minsep, deltas[x]) * 0.5;
    if (!std::isfinite(fl)) fl = 1.0;
    floor_radius[x] = fl;
    const auto row = space.dist_row(x);
    double dstar = 0.0;
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && row[y] > 0.0 && row[y] < deltas[x]) dstar = std::max(dstar, row[y]);
    candidate[x] = dstar > 0.0 ? dstar : fl;
  }

  std::vector<std::size_t> order = points;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (candidate[a] != candidate[b]) return candidate[a] > candidate[b];
    return a < b;
  });

  VitaliSelection sel;
  sel.residual = domain;
  std::vector<std::uint8_t> covered(n, 0);

  auto residual_measure = [&]() {
    CompensatedSum acc;
    for (std::size_t y = 0; y < n; ++y)
      if (domain.contains(y) && !covered[y]) acc.add(space.weight(y));
    return acc.value();
  };

  double residual = residual_measure();
  bool done = residual < residual_target;
  while (!done) {
    bool progress = false;
    for (std::size_t x : order) {
      if (covered[x]) continue;
      const auto row = space.dist_row(x);
      double r = candidate[x];
      bool accepted = false;
      for (;;) {
        bool overlap = false;
        for (std::size_t y = 0; y < n; ++y) {
          if (row[y] <= r && covered[y]) {
            overlap = true;
            break;
          }
        }
        if (!overlap) {
          accepted = true;
          break;
        }
        if (r <= floor_radius[x]) break;  // degenerate metric; skip the point
        r = std::max(r * 0.5, floor_radius[x]);
      }
      if (!accepted) continue;
      sel.centers.push_back(x);
      sel.radii.push_back(r);
      for (std::size_t y = 0; y < n; ++y)
        if (row[y] <= r) covered[y] = 1;
      progress = true;
      residual = residual_measure();
      if (residual < residual_target) {
        done = true;
        break;
      }
    }
    if (!done && !progress)
      throw std::runtime_error(
          "disjoint ball selection stalled; achieved residual " +
          std::to_string(residual));
  }

  PointSet residual_set(n);
  for (std::size_t y = 0; y < n; ++y)
    if (domain.contains(y) && !covered[y]) residual_set.insert(y);
  sel.residual = residual_set;
  sel.residual_measure = residual;
  return sel;
}

EpsilonNet construct_epsilon_net(const FunctionFamily& family, double epsilon,
                                 double avg_radius, const PointSet& domain,
                                 const LpConfig& cfg) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(avg_radius > 0.0, "averaging radius must be positive");
  const auto& space = family.space();
  require(domain.size() == space.size(), "domain mask size mismatch");
  require(!domain.empty(), "domain is empty");

  const std::size_t n = space.size();
  const std::size_t members = family.count();
  const double mu_domain = set_measure(space, domain);
  const double threshold = epsilon * std::pow(mu_domain, -1.0 / cfg.p) / 4.0;

  EpsilonNet net;
  net.space = family.space_ptr();
  net.epsilon = epsilon;
  net.avg_radius = avg_radius;
  net.domain = domain;
  net.level_spacing = 2.0 * threshold;

  const double bound = family_bound(family, cfg);
  if (bound == 0.0) {
    // All-zero family: the single zero element certifies everything.
    net.selection.residual = domain;
    net.selection.residual_measure = mu_domain;
    net.element_levels.push_back({});
    net.member_assigned_element.assign(members, 0);
    net.member_element.assign(members, 0);
    net.member_distance.assign(members, 0.0);
    net.certified = true;
    return net;
  }

  const auto avg = family_average_values(family, avg_radius);

  // Per-point modulus radius: distance to the first point where some
  // averaged member deviates by at least the threshold.
  std::vector<double> deltas(n, kInf);
  const auto domain_points = domain.indices();
#pragma omp parallel for schedule(static)
  for (std::int64_t di = 0; di < static_cast<std::int64_t>(domain_points.size()); ++di) {
    const std::size_t x = domain_points[static_cast<std::size_t>(di)];
    const auto row = space.dist_row(x);
    std::vector<std::size_t> near(n);
    for (std::size_t y = 0; y < n; ++y) near[y] = y;
    std::sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) {
      if (row[a] != row[b]) return row[a] < row[b];
      return a < b;
    });
    for (std::size_t y : near) {
      double osc = 0.0;
      for (std::size_t m = 0; m < members; ++m)
        osc = std::max(osc, std::abs(avg[m][y] - avg[m][x]));
      if (osc >= threshold) {
        deltas[x] = row[y];
        break;
      }
    }
  }

  const double min_ball = min_ball_measure(space, domain, avg_radius);
  const double residual_target =
      min_ball * std::pow(epsilon / (2.0 * bound), cfg.p);
  net.selection = vitali_selection(space, domain, deltas, residual_target);

  // Quantize averaged values at each ball center on a uniform grid anchored
  // at the per-ball minimum, levels at min + (j + 1/2) * spacing; every
  // value sits within half a spacing (= threshold) of its level.
  const std::size_t balls = net.selection.centers.size();
  const double spacing = net.level_spacing;
  std::vector<double> anchor(balls, 0.0);
  std::vector<std::vector<long long>> level_index(members,
                                                  std::vector<long long>(balls, 0));
  for (std::size_t i = 0; i < balls; ++i) {
    const std::size_t ci = net.selection.centers[i];
    double vmin = kInf;
    for (std::size_t m = 0; m < members; ++m) vmin = std::min(vmin, avg[m][ci]);
    anchor[i] = vmin;
    for (std::size_t m = 0; m < members; ++m) {
      const double v = avg[m][ci];
      const long long j0 =
          static_cast<long long>(std::floor((v - vmin) / spacing));
      long long best = std::max<long long>(0, j0 - 1);
      double best_err = kInf;
      for (long long j = std::max<long long>(0, j0 - 1); j <= j0 + 1; ++j) {
        const double level = vmin + (static_cast<double>(j) + 0.5) * spacing;
        const double err = std::abs(v - level);
        if (err < best_err) {
          best_err = err;
          best = j;
        }
      }
      level_index[m][i] = best;
    }
  }

  std::map<std::vector<long long>, std::size_t> seen;
  net.member_assigned_element.resize(members);
  for (std::size_t m = 0; m < members; ++m) {
    auto [it, inserted] = seen.try_emplace(level_index[m], net.element_levels.size());
    if (inserted) {
      std::vector<double> levels(balls);
      for (std::size_t i = 0; i < balls; ++i)
        levels[i] = anchor[i] +
                    (static_cast<double>(level_index[m][i]) + 0.5) * spacing;
      net.element_levels.push_back(std::move(levels));
    }
    net.member_assigned_element[m] = it->second;
  }

  // Certify every member against its nearest element.
  std::vector<std::vector<double>> element_values;
  element_values.reserve(net.element_levels.size());
  for (std::size_t e = 0; e < net.element_levels.size(); ++e)
    element_values.push_back(net_element_values(net, e));

  net.member_element.assign(members, 0);
  net.member_distance.assign(members, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t mi = 0; mi < static_cast<std::int64_t>(members); ++mi) {
    const std::size_t m = static_cast<std::size_t>(mi);
    std::size_t best = 0;
    double best_dist = kInf;
    for (std::size_t e = 0; e < element_values.size(); ++e) {
      const double d =
          masked_distance(space, domain, avg[m], element_values[e], cfg.p);
      if (d < best_dist) {
        best_dist = d;
        best = e;
      }
    }
    net.member_element[m] = best;
    net.member_distance[m] = best_dist;
  }
  net.certified = std::all_of(net.member_distance.begin(), net.member_distance.end(),
                              [&](double d) { return d < epsilon; });
  return net;
}

std::vector<double> net_element_values(const EpsilonNet& net, std::size_t element) {
  require(net.space != nullptr, "net carries no space");
  require(element < net.element_levels.size(), "element index out of range");
  const auto& space = *net.space;
  std::vector<double> values(space.size(), 0.0);
  const auto& levels = net.element_levels[element];
  for (std::size_t i = 0; i < net.selection.centers.size(); ++i) {
    const auto row = space.dist_row(net.selection.centers[i]);
    for (std::size_t y = 0; y < space.size(); ++y)
      if (row[y] <= net.selection.radii[i] && net.domain.contains(y))
        values[y] = levels[i];
  }
  return values;
}

GreedyNet greedy_net_oracle(const FunctionFamily& family, double epsilon,
                            const LpConfig& cfg) {
  require(epsilon > 0.0, "epsilon must be positive");
  const std::size_t members = family.count();

  GreedyNet net;
  net.elements.push_back(0);
  net.final_gap = kInf;
  std::vector<double> min_dist(members, 0.0);
  std::vector<std::size_t> nearest(members, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t mi = 0; mi < static_cast<std::int64_t>(members); ++mi) {
    const auto m = static_cast<std::size_t>(mi);
    min_dist[m] = lp_distance(family.member(m), family.member(0), cfg);
  }

  for (;;) {
    std::size_t far = 0;
    double gap = -1.0;
    for (std::size_t m = 0; m < members; ++m) {
      if (min_dist[m] > gap) {
        gap = min_dist[m];
        far = m;
      }
    }
    if (gap <= epsilon) {
      net.achieved = std::max(gap, 0.0);
      break;
    }
    net.final_gap = gap;
    const std::size_t e = net.elements.size();
    net.elements.push_back(far);
#pragma omp parallel for schedule(static)
    for (std::int64_t mi = 0; mi < static_cast<std::int64_t>(members); ++mi) {
      const auto m = static_cast<std::size_t>(mi);
      const double d = lp_distance(family.member(m), family.member(far), cfg);
      if (d < min_dist[m]) {
        min_dist[m] = d;
        nearest[m] = e;
      }
    }
  }
  net.member_element = std::move(nearest);
  net.member_distance = std::move(min_dist);
  return net;
}

TranslationConditionResult kr_translation_condition(const FunctionFamily& family,
                                                    double epsilon,
                                                    std::size_t max_steps,
                                                    const LpConfig& cfg) {
  require(epsilon > 0.0, "budget must be positive");
  require(max_steps >= 1, "at least one shift step required");
  const auto& space = family.space();
  require(space.periodic_shift_step().has_value(),
          "translation test needs a periodic grid");
  const double h = *space.periodic_shift_step();
  const std::size_t members = family.count();

  TranslationConditionResult res;
  std::size_t first_fail = 0;
  bool failed = false;
  for (std::size_t j = 1; j <= max_steps; ++j) {
    std::vector<double> devs(members);
#pragma omp parallel for schedule(static)
    for (std::int64_t mi = 0; mi < static_cast<std::int64_t>(members); ++mi) {
      const auto m = static_cast<std::size_t>(mi);
      const auto f = family.member(m);
      devs[m] = lp_distance(translate(f, static_cast<long long>(j)), f, cfg);
    }
    double worst = -1.0;
    std::size_t worst_member = 0;
    for (std::size_t m = 0; m < members; ++m) {
      if (devs[m] > worst) {
        worst = devs[m];
        worst_member = m;
      }
    }
    res.shifts.push_back(static_cast<double>(j) * h);
    res.max_deviation.push_back(worst);
    if (!failed && worst >= epsilon) {
      failed = true;
      first_fail = j;
      res.witness = {worst_member, static_cast<double>(j) * h, worst};
    }
  }
  if (failed && first_fail == 1) {
    res.passed = false;
  } else {
    res.passed = true;
    res.delta = failed ? static_cast<double>(first_fail) * h
                       : static_cast<double>(max_steps) * h;
  }
  return res;
}

std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::CertifiedPrecompact: return "certified-precompact";
    case Verdict::Condition1Failed: return "condition1-failed";
    case Verdict::Condition2Failed: return "condition2-failed";
  }
  return "unknown";
}

CompactnessReport is_relatively_compact(const FunctionFamily& family,
                                        double epsilon, const LpConfig& cfg,
                                        const CompactnessOptions& options) {
  require(epsilon > 0.0, "epsilon must be positive");
  const auto& space = family.space();

  CompactnessReport report;
  report.epsilon = epsilon;

  const auto candidates =
      ball_exhaustion(space, options.tail_base_point, options.tail_radius_cap);
  const auto tail = check_condition_tail(family, epsilon / 2.0, candidates, cfg);
  report.tail_radii = tail.candidate_radii;
  report.tail_max = tail.max_tail;
  if (!tail.passed) {
    report.verdict = Verdict::Condition2Failed;
    report.witness = tail.witness;
    return report;
  }
  report.tail_radius = tail.radius;
  report.tail_set = tail.set;

  const auto grid = options.radius_grid.empty() ? dyadic_radius_grid(space)
                                                : options.radius_grid;
  const auto avg = check_condition_avg(family, epsilon / 2.0, grid, cfg);
  report.avg_radii = avg.radii;
  report.avg_max_deviation = avg.max_deviation;
  if (!avg.passed) {
    report.verdict = Verdict::Condition1Failed;
    report.witness = avg.witness;
    return report;
  }
  report.delta = avg.delta;

  // Net at the largest radius the averaging budget accepts.
  double net_radius = avg.radii.front();
  for (std::size_t i = 0; i < avg.radii.size(); ++i)
    if (avg.max_deviation[i] < epsilon / 2.0) net_radius = avg.radii[i];

  auto net = construct_epsilon_net(family, epsilon, net_radius, tail.set, cfg);

  // Theorem-level certificate: whole-space distance from each member to its
  // assigned element, pushed one ulp up so every re-measurement lands
  // strictly below the reported radius.
  double worst = 0.0;
  for (std::size_t m = 0; m < family.count(); ++m) {
    const auto element = net_element_values(net, net.member_element[m]);
    CompensatedSum acc;
    for (std::size_t y = 0; y < space.size(); ++y)
      acc.add(abs_pow(family.member_values()[m][y] - element[y], cfg.p) *
              space.weight(y));
    worst = std::max(worst, root_p(acc.value(), cfg.p));
  }
  report.certified_radius = std::nextafter(worst, kInf);
  report.verdict = Verdict::CertifiedPrecompact;
  report.net = std::move(net);
  return report;
}

}  // namespace kr
