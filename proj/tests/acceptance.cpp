// Acceptance gate: drives the full library through its published regime on a
// fixed desk-scale corpus and prints exactly one PASS/FAIL line per criterion.
// Exit code is the number of failed criteria, so CI can gate on it directly.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kr/averaging.hpp"
#include "kr/compactness.hpp"
#include "kr/generators.hpp"
#include "kr/io.hpp"
#include "kr/lipschitz.hpp"
#include "kr/lp.hpp"
#include "kr/numerics.hpp"
#include "kr/space.hpp"
#include "test_support.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct NamedSpace {
  std::string name;
  kr::SpacePtr space;
};

std::vector<NamedSpace> corpus() {
  return {
      {"s3", kr::test::s3()},
      {"circle64", kr::make_circle_grid(64)},
      {"circle256", kr::make_circle_grid(256)},
      {"circle1024", kr::make_circle_grid(1024)},
      {"cloud200", kr::make_random_cloud(200, 2, 1)},
  };
}

// Radii exercised per space: every breakpoint radius on the tiny space,
// twenty dyadic steps down from the diameter elsewhere.
std::vector<double> corpus_radii(const NamedSpace& s) {
  if (s.name == "s3") {
    auto radii = kr::doubling_constant(*s.space).critical_radii;
    std::erase_if(radii, [](double r) { return r <= 0.0; });
    return radii;
  }
  std::vector<double> radii;
  double r = s.space->diameter();
  for (int j = 1; j <= 20; ++j) {
    r *= 0.5;
    radii.push_back(r);
  }
  return radii;
}

kr::FunctionFamily random_corpus_family(const kr::SpacePtr& space,
                                        std::size_t count, double amplitude) {
  std::vector<std::vector<double>> members;
  members.reserve(count);
  for (std::size_t seed = 1; seed <= count; ++seed)
    members.push_back(kr::random_function(space, amplitude, seed).values());
  return {space, std::move(members)};
}

const std::vector<double> kExponents = {1.0, 1.5, 2.0, 3.0};

std::string fmt(double v) { return kr::io::format_double(v); }

int failures = 0;

void verdict(int id, bool ok, const std::string& text) {
  std::printf("criterion %02d %s: %s\n", id, ok ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

template <typename Body>
void criterion(int id, Body body) {
  try {
    body();
  } catch (const std::exception& e) {
    verdict(id, false, std::string("unexpected exception: ") + e.what());
  }
}

// ---- 1: norm bound ---------------------------------------------------------

void criterion_norm_bound() {
  const auto start = Clock::now();
  double worst = -kr::kInf;  // (||A_r f||_p - gamma^{1/p} ||f||_p) / (1 + ||f||_p)
  for (const auto& s : corpus()) {
    const double gamma = kr::doubling_constant(*s.space).gamma;
    const auto radii = corpus_radii(s);
    const auto family = random_corpus_family(s.space, 100, 1.0);
    const auto& members = family.member_values();
    const auto& w = s.space->weights();
    const std::size_t n = s.space->size();

    std::vector<std::vector<double>> norm_f(kExponents.size(),
                                            std::vector<double>(members.size()));
    for (std::size_t ip = 0; ip < kExponents.size(); ++ip)
      for (std::size_t m = 0; m < members.size(); ++m) {
        kr::CompensatedSum acc;
        for (std::size_t y = 0; y < n; ++y)
          acc.add(kr::abs_pow(members[m][y], kExponents[ip]) * w[y]);
        norm_f[ip][m] = kr::root_p(acc.value(), kExponents[ip]);
      }

    for (double r : radii) {
      const auto avg = kr::family_average_values(family, r);
      for (std::size_t ip = 0; ip < kExponents.size(); ++ip) {
        const double p = kExponents[ip];
        const double gp = std::pow(gamma, 1.0 / p);
        for (std::size_t m = 0; m < members.size(); ++m) {
          kr::CompensatedSum acc;
          for (std::size_t y = 0; y < n; ++y)
            acc.add(kr::abs_pow(avg[m][y], p) * w[y]);
          const double na = kr::root_p(acc.value(), p);
          worst = std::max(worst,
                           (na - gp * norm_f[ip][m]) / (1.0 + norm_f[ip][m]));
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  verdict(1, worst <= 1e-9 && elapsed < 60.0,
          "ball averages stay within the doubling norm bound for p in "
          "{1,1.5,2,3} over 100 random functions per space (worst excess " +
              fmt(worst) + ", " + fmt(elapsed) + " s)");
}

// ---- 2: pointwise bound ----------------------------------------------------

void criterion_pointwise_bound() {
  double worst = kr::kInf;  // slack / (1 + ||f||_p)
  for (const auto& s : corpus()) {
    const auto radii = corpus_radii(s);
    const auto family = random_corpus_family(s.space, 100, 1.0);
    const auto& members = family.member_values();
    const auto& w = s.space->weights();
    const std::size_t n = s.space->size();
    const std::size_t mc = members.size();

    // |f|^p * w per exponent, so ball norms reduce to sub-sums.
    std::vector<std::vector<std::vector<double>>> pw(
        kExponents.size(),
        std::vector<std::vector<double>>(mc, std::vector<double>(n)));
    std::vector<std::vector<double>> norm_f(kExponents.size(),
                                            std::vector<double>(mc));
    for (std::size_t ip = 0; ip < kExponents.size(); ++ip)
      for (std::size_t m = 0; m < mc; ++m) {
        kr::CompensatedSum acc;
        for (std::size_t y = 0; y < n; ++y) {
          pw[ip][m][y] = kr::abs_pow(members[m][y], kExponents[ip]) * w[y];
          acc.add(pw[ip][m][y]);
        }
        norm_f[ip][m] = kr::root_p(acc.value(), kExponents[ip]);
      }

    std::vector<std::size_t> ball;
    for (double r : radii) {
      const auto avg = kr::family_average_values(family, r);
      for (std::size_t x = 0; x < n; ++x) {
        const auto row = s.space->dist_row(x);
        ball.clear();
        double mu = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
          if (row[y] <= r) {
            ball.push_back(y);
            mu += w[y];
          }
        }
        for (std::size_t ip = 0; ip < kExponents.size(); ++ip) {
          const double p = kExponents[ip];
          const double mu_pow = std::pow(mu, -1.0 / p);
          for (std::size_t m = 0; m < mc; ++m) {
            double sum = 0.0;
            for (std::size_t y : ball) sum += pw[ip][m][y];
            const double slack =
                kr::root_p(sum, p) * mu_pow - std::abs(avg[m][x]);
            worst = std::min(worst, slack / (1.0 + norm_f[ip][m]));
          }
        }
      }
    }

    // bind the library's own checker at one representative radius
    const double mid = radii[radii.size() / 2];
    kr::LpFunction f0{s.space, members[0]};
    for (std::size_t ip = 0; ip < kExponents.size(); ++ip) {
      const auto rep =
          kr::pointwise_bound_check(f0, mid, kr::LpConfig(kExponents[ip]));
      worst = std::min(worst, rep.min_slack / (1.0 + norm_f[ip][0]));
    }
  }
  verdict(2, worst >= -1e-12,
          "averaged values never beat the per-ball Hoelder bound by more than "
          "rounding across the corpus (worst relative slack " +
              fmt(worst) + ")");
}

// ---- 3: ball measure vs set measure ----------------------------------------

void criterion_ball_measure() {
  double worst = kr::kInf;  // (min ball - gamma^-n mu(E)) / max(1, mu(E))
  for (const auto& s : corpus()) {
    const double gamma = kr::doubling_constant(*s.space).gamma;
    const auto grid = kr::dyadic_radius_grid(*s.space);
    const std::size_t n = s.space->size();
    for (std::uint64_t trial = 1; trial <= 50; ++trial) {
      kr::Rng rng(trial * 977 + n);
      const std::size_t center = rng.index(n);
      const double seed_radius = grid[rng.index(grid.size())];
      const auto seed_ball = kr::ball(*s.space, center, seed_radius);
      kr::PointSet e(n);
      e.insert(center);
      for (std::size_t y = 0; y < n; ++y)
        if (seed_ball.contains(y) && rng.unit() < 0.5) e.insert(y);
      const double mu_e = kr::set_measure(*s.space, e);
      const double diam_e = kr::set_diameter(*s.space, e);

      for (double r : grid) {
        int steps = 0;  // smallest k with 2^k r >= diam(E); exact in fp
        while (std::ldexp(r, steps) < diam_e) ++steps;
        const double bound = std::pow(gamma, -double(steps)) * mu_e;
        const double slack = kr::min_ball_measure(*s.space, e, r) - bound;
        worst = std::min(worst, slack / std::max(1.0, mu_e));
      }
    }
  }
  verdict(3, worst >= -1e-12,
          "every ball around a random bounded set keeps its doubling-decayed "
          "share of the set measure (worst relative slack " +
              fmt(worst) + ")");
}

// ---- 4: averaging identities ------------------------------------------------

void criterion_averaging_identities() {
  bool ok = true;
  std::string detail;
  for (const auto& s : corpus()) {
    const auto grid = kr::dyadic_radius_grid(*s.space);
    const std::size_t n = s.space->size();

    const auto f = kr::random_function(s.space, 2.0, 1);
    const auto g = kr::random_function(s.space, 1.0, 2);
    std::vector<double> combo_vals(n), const_vals(n, 3.7);
    for (std::size_t y = 0; y < n; ++y)
      combo_vals[y] = 2.5 * f[y] - 1.25 * g[y];
    kr::LpFunction combo{s.space, std::move(combo_vals)};
    kr::LpFunction constant{s.space, std::move(const_vals)};

    const std::vector<double> probes = {grid.front(), grid[grid.size() / 2],
                                        grid.back()};
    for (double r : probes) {
      const auto a_combo = kr::average(combo, r);
      const auto a_f = kr::average(f, r);
      const auto a_g = kr::average(g, r);
      const auto a_const = kr::average(constant, r);
      for (std::size_t y = 0; y < n; ++y) {
        const double lin = 2.5 * a_f[y] - 1.25 * a_g[y];
        if (std::abs(a_combo[y] - lin) > 1e-12 * (1.0 + std::abs(lin))) {
          ok = false;
          detail = "linearity drift on " + s.name;
        }
        if (std::abs(a_const[y] - 3.7) > 1e-12 * 3.7) {
          ok = false;
          detail = "constant drift on " + s.name;
        }
      }
    }

    const double sep = s.space->min_separation();
    if (std::isfinite(sep) &&
        kr::average(f, 0.9 * sep).values() != f.values()) {
      ok = false;
      detail = "sub-separation averaging is not the identity on " + s.name;
    }

    // Lipschitz rate over the full radius grid, 50 envelope functions.
    const double lip_bound = 2.0;
    std::vector<std::vector<double>> lip_members;
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
      lip_members.push_back(
          kr::random_lipschitz_function(s.space, lip_bound, seed).values());
    kr::FunctionFamily lip_family{s.space, std::move(lip_members)};
    for (double r : grid) {
      const auto avg = kr::family_average_values(lip_family, r);
      for (std::size_t m = 0; m < lip_family.count() && ok; ++m) {
        for (std::size_t y = 0; y < n; ++y) {
          const double dev = std::abs(avg[m][y] - lip_family.member_values()[m][y]);
          if (dev > lip_bound * r + 1e-12 * (1.0 + lip_bound)) {
            ok = false;
            detail = "averaging moved faster than lip * r on " + s.name;
            break;
          }
        }
      }
    }
  }
  verdict(4, ok,
          ok ? "averaging is linear, exact on constants, the identity below "
               "the minimum separation, and moves slope-bounded functions by "
               "at most lip * r"
             : detail);
}

// ---- 5: sinc attenuation oracle ---------------------------------------------

void criterion_sinc_oracle() {
  const auto start = Clock::now();
  auto space = kr::make_circle_grid(1024);
  const auto family = kr::oscillation_family(space, 16);
  const kr::LpConfig cfg(2.0);
  double worst = 0.0;
  for (int j = 2; j <= 8; ++j) {
    const double r = std::ldexp(1.0, -j);
    const auto avg = kr::family_average_values(family, r);
    for (std::size_t k = 1; k <= 16; ++k) {
      const double arg = 2.0 * std::numbers::pi * double(k) * r;
      const double predicted =
          std::abs(1.0 - std::sin(arg) / arg) / std::numbers::sqrt2;
      const double measured = kr::lp_distance(
          kr::LpFunction{space, avg[k - 1]}, family.member(k - 1), cfg);
      worst = std::max(worst, std::abs(measured - predicted));
    }
  }
  const double elapsed = seconds_since(start);
  verdict(5, worst <= 0.02 && elapsed < 30.0,
          "averaging attenuates pure tones like the continuum sinc factor "
          "(worst gap " +
              fmt(worst) + ", " + fmt(elapsed) + " s)");
}

// ---- 6: certification soundness ---------------------------------------------

void criterion_certification() {
  auto space = kr::make_circle_grid(256);
  const kr::LpConfig cfg(2.0);
  const kr::LipschitzClassSpec cls{5.0, 0, cfg};
  bool ok = true;
  std::string detail;
  double worst_margin = kr::kInf;
  for (std::uint64_t seed = 1; seed <= 20 && ok; ++seed) {
    const auto family = kr::random_class_family(space, 10, cls, 0.9, seed);
    const auto report = kr::is_relatively_compact(family, 0.25, cfg);
    if (report.verdict != kr::Verdict::CertifiedPrecompact || !report.net ||
        !report.certified_radius) {
      ok = false;
      detail = "family seed " + std::to_string(seed) + " did not certify";
      break;
    }
    const double radius = *report.certified_radius;
    for (std::size_t m = 0; m < family.count(); ++m) {
      const auto element =
          kr::net_element_values(*report.net, report.net->member_element[m]);
      const double d =
          kr::lp_distance(family.member(m), kr::LpFunction{space, element}, cfg);
      worst_margin = std::min(worst_margin, radius - d);
      if (!(d < radius)) {
        ok = false;
        detail = "re-measured distance reached the certified radius (seed " +
                 std::to_string(seed) + ")";
      }
    }
    const auto oracle = kr::greedy_net_oracle(family, radius, cfg);
    if (oracle.achieved > radius) {
      ok = false;
      detail = "greedy oracle exceeded the certified radius (seed " +
               std::to_string(seed) + ")";
    }
    for (double d : oracle.member_distance)
      if (d > radius) {
        ok = false;
        detail = "oracle member distance exceeded the certified radius";
      }
  }
  verdict(6, ok,
          ok ? "20 random slope-and-norm-bounded families certify at epsilon "
               "0.25 and every member re-measures strictly inside the "
               "certified radius (tightest margin " +
                   fmt(worst_margin) + ")"
             : detail);
}

// ---- 7: refutation witnesses -------------------------------------------------

void criterion_refutation() {
  bool ok = true;
  std::string detail;

  auto circle = kr::make_circle_grid(1024);
  const auto osc = kr::oscillation_family(circle, 32);
  kr::CompactnessOptions osc_opts;
  osc_opts.radius_grid = {0.02, 0.04, 0.08, 0.16, 0.32};
  const auto osc_report =
      kr::is_relatively_compact(osc, 0.1, kr::LpConfig(2.0), osc_opts);
  if (osc_report.verdict != kr::Verdict::Condition1Failed || !osc_report.witness) {
    ok = false;
    detail = "oscillation family was not refuted by the averaging condition";
  } else {
    const auto& w = *osc_report.witness;
    if (w.member != 31 || w.radius != 0.02) {
      ok = false;
      detail = "oscillation witness should be the highest frequency at the "
               "smallest radius";
    } else {
      const auto avg = kr::family_average_values(osc, w.radius);
      const double recomputed = kr::lp_distance(
          kr::LpFunction{circle, avg[w.member]}, osc.member(w.member),
          kr::LpConfig(2.0));
      if (recomputed != w.value) {
        ok = false;
        detail = "oscillation witness value does not re-measure";
      }
      if (osc_report.delta || !osc_report.tail_radius) {
        ok = false;
        detail = "oscillation report shape is wrong";
      }
    }
  }

  auto line = kr::make_line_grid(1001, 100.0);
  const auto bumps = kr::bump_family(line, 10, 10.0, 1.0);
  kr::CompactnessOptions bump_opts;
  bump_opts.tail_base_point = 0;
  bump_opts.tail_radius_cap = 40.0;
  const auto bump_report =
      kr::is_relatively_compact(bumps, 0.5, kr::LpConfig(2.0), bump_opts);
  if (bump_report.verdict != kr::Verdict::Condition2Failed || !bump_report.witness) {
    ok = false;
    detail = "escaping bumps were not refuted by the tail condition";
  } else {
    // Bumps 4..9 sit past the capped tail; fp rounding of the grid pitch
    // decides which of them measures worst.
    const auto& w = *bump_report.witness;
    if (w.member < 4 || w.member > 9 || w.radius != 32.0) {
      ok = false;
      detail = "bump witness should be a bump past the capped tail (member " +
               std::to_string(w.member) + ", radius " + fmt(w.radius) + ")";
    } else {
      const auto candidates = kr::ball_exhaustion(*line, 0, 40.0);
      const double recomputed =
          kr::tail_norm(bumps.member(w.member), candidates.back().set,
                        kr::LpConfig(2.0));
      if (recomputed != w.value) {
        ok = false;
        detail = "bump witness value does not re-measure";
      }
      if (bump_report.delta || bump_report.tail_radius || bump_report.net) {
        ok = false;
        detail = "bump report shape is wrong";
      }
    }
  }

  verdict(7, ok,
          ok ? "oscillation refutes through the averaging condition and "
               "escaping bumps refute through the capped tail, both with "
               "re-measurable witnesses"
             : detail);
}

// ---- 8: translation cross-check ----------------------------------------------

void criterion_translation() {
  auto space = kr::make_circle_grid(256);
  const kr::LpConfig cfg(2.0);
  const kr::LipschitzClassSpec cls{5.0, 0, cfg};
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 20 && ok; ++seed) {
    const auto family = kr::random_class_family(space, 10, cls, 0.9, seed);
    const auto res = kr::kr_translation_condition(family, 0.5, 16, cfg);
    if (!res.passed || !(res.delta > 0.0)) {
      ok = false;
      detail = "certified family seed " + std::to_string(seed) +
               " failed the translation cross-check";
    }
  }

  auto circle = kr::make_circle_grid(1024);
  const auto osc = kr::oscillation_family(circle, 32);
  const auto res = kr::kr_translation_condition(osc, 0.1, 16, kr::LpConfig(2.0));
  const double predicted =
      std::numbers::sqrt2 * std::abs(std::sin(std::numbers::pi * 32.0 / 1024.0));
  if (res.passed) {
    ok = false;
    detail = "oscillation family passed the translation check";
  } else if (res.witness.member != 31 ||
             std::abs(res.witness.value - predicted) > 0.02) {
    ok = false;
    detail = "translation witness does not match the trig oracle (value " +
             fmt(res.witness.value) + ", predicted " + fmt(predicted) + ")";
  }

  verdict(8, ok,
          ok ? "certified families pass the single-step translation test at "
               "twice the budget; the oscillation family fails it exactly at "
               "the trig-oracle value " +
                   fmt(predicted)
             : detail);
}

// ---- 9: extension and deformation layer ---------------------------------------

void criterion_lipschitz_layer() {
  bool ok = true;
  std::string detail;

  for (const auto& s : corpus()) {
    const std::size_t n = s.space->size();
    for (std::uint64_t seed = 1; seed <= 200 && ok; ++seed) {
      const double bound = 0.5 + double(seed % 4);
      const std::size_t anchors =
          1 + std::size_t(seed * 7919) % std::min<std::size_t>(n, 40);
      const auto partial = kr::random_partial(s.space, anchors, bound, seed);
      const auto ext = kr::mcshane_extend(partial);
      for (std::size_t a = 0; a < partial.domain.size(); ++a)
        if (ext[partial.domain[a]] != partial.values[a]) {
          ok = false;
          detail = "extension moved an anchor on " + s.name;
        }
      if (kr::lipschitz_constant(ext) > bound + 1e-12) {
        ok = false;
        detail = "extension exceeded its slope bound on " + s.name;
      }
      const auto lower = kr::test::whitney_extend(partial);
      for (std::size_t x = 0; x < n; ++x)
        if (ext[x] < lower[x] - 1e-12 * (1.0 + std::abs(lower[x]))) {
          ok = false;
          detail = "extension dipped below the lower envelope on " + s.name;
        }
    }
    if (!ok) break;

    // shrink deformation identities, exact to 1e-12
    const kr::LpConfig cfg(2.0);
    const kr::LipschitzClassSpec cls{4.0, 0, cfg};
    const auto family = kr::random_class_family(s.space, 6, cls, 0.9, 5);
    const double eps = 0.6;
    const double factor = 1.0 - eps / cls.bound;
    std::vector<kr::LpFunction> shrunk;
    for (std::size_t m = 0; m < family.count(); ++m) {
      const auto f = family.member(m);
      const auto g = kr::scale_deformation(f, cls, eps);
      const double move = kr::lp_distance(g, f, cfg);
      const double predicted = (eps / cls.bound) * kr::lp_norm(f, cfg);
      if (std::abs(move - predicted) > 1e-12 * (1.0 + predicted)) {
        ok = false;
        detail = "shrink displacement identity failed on " + s.name;
      }
      if (!kr::in_lipschitz_class(g, cls).member) {
        ok = false;
        detail = "shrink left the class on " + s.name;
      }
      shrunk.push_back(g);
    }
    for (std::size_t m = 1; m < shrunk.size() && ok; ++m) {
      const double before =
          kr::lp_distance(family.member(m - 1), family.member(m), cfg);
      const double after = kr::lp_distance(shrunk[m - 1], shrunk[m], cfg);
      if (std::abs(after - factor * before) > 1e-12 * (1.0 + before)) {
        ok = false;
        detail = "shrink contraction factor drifted on " + s.name;
      }
    }
    if (!ok) break;
  }

  if (ok) {
    // spike deformation on the fine circle
    auto circle = kr::make_circle_grid(1024);
    const kr::LpConfig cfg(2.0);
    const kr::LipschitzClassSpec cls{2.0, 0, cfg};
    const auto f = kr::random_class_family(circle, 1, cls, 0.75, 7).member(0);
    const auto rep = kr::spike_deformation(f, cls, 0.25, 512);
    const auto row = circle->dist_row(0);
    for (std::size_t x = 0; x < circle->size(); ++x)
      if (row[x] > rep.r1 && rep.result.values()[x] != f[x]) {
        ok = false;
        detail = "spike touched values outside its outer radius";
      }
    if (rep.deviation > 0.25) {
      ok = false;
      detail = "spike moved the function by more than epsilon";
    }
    if (std::abs(rep.achieved_lip - cls.bound) > 2.0 / 1024.0) {
      ok = false;
      detail = "spike did not drive the slope to the class bound (achieved " +
               fmt(rep.achieved_lip) + ")";
    }
    if (!rep.spike_pair_present) {
      ok = false;
      detail = "spike plateau holds no second grid point";
    }
  }

  verdict(9, ok,
          ok ? "1000 extensions agree on anchors, respect their bound, and "
               "dominate the lower envelope; shrink identities hold to 1e-12; "
               "the spike stays local, moves less than epsilon, and reaches "
               "the class slope"
             : detail);
}

// ---- 10: density approximants --------------------------------------------------

void criterion_density() {
  bool ok = true;
  std::string detail;
  for (const auto& s : corpus()) {
    const std::size_t n = s.space->size();
    for (std::uint64_t t = 1; t <= 50 && ok; ++t) {
      const kr::LpFunction f =
          (t % 2 == 1) ? kr::random_function(s.space, 1.5, t)
                       : kr::random_lipschitz_function(s.space, 2.0, t);
      const kr::LpConfig cfg(t % 2 == 1 ? 1.0 : 2.0);
      for (double eps : {0.5, 0.2, 0.1}) {
        const auto a = kr::density_approximant(f, eps, cfg);
        kr::CompensatedSum err;
        for (std::size_t y = 0; y < n; ++y)
          err.add(kr::abs_pow(a.g[y] - f[y], cfg.p) * s.space->weight(y));
        if (kr::root_p(err.value(), cfg.p) > eps) {
          ok = false;
          detail = "approximant missed its budget on " + s.name;
          break;
        }
        std::vector<char> covered(n, 0);
        for (std::size_t i = 0; i < a.centers.size(); ++i) {
          if (!(a.inner_radii[i] > 0.0 && a.inner_radii[i] < a.outer_radii[i]) ||
              a.levels[i] == 0.0) {
            ok = false;
            detail = "approximant component invariants failed on " + s.name;
          }
          const auto row = s.space->dist_row(a.centers[i]);
          for (std::size_t y = 0; y < n; ++y)
            if (row[y] <= a.outer_radii[i]) covered[y] = 1;
        }
        for (std::size_t y = 0; y < n; ++y)
          if (a.g[y] != 0.0 && !covered[y]) {
            ok = false;
            detail = "approximant support leaked outside its balls on " + s.name;
          }
      }
    }
    if (!ok) break;
  }
  verdict(10, ok,
          ok ? "750 ramp approximants meet their budget with support confined "
               "to finitely many disjoint balls, and none of them errs"
             : detail);
}

// ---- 11: byte determinism -------------------------------------------------------

void criterion_determinism() {
  bool ok = true;
  std::string detail;
  struct Golden {
    std::string config;
    int expected_exit;
  };
  const std::vector<Golden> goldens = {
      {"golden_check_certify.json", 0},
      {"golden_check_refute.json", 1},
  };
  for (const auto& golden : goldens) {
    struct Snapshot {
      std::string stdout_text, report, avg_csv, tail_csv;
      int exit_code = -1;
    };
    auto snapshot = [&](const std::string& extra_args) {
      kr::test::TempDir dir;
      const std::string out = dir.file("report.json");
      auto run = kr::test::run_tool("check --config " +
                                    kr::test::fixture(golden.config) + " --out " +
                                    out + extra_args);
      Snapshot s;
      s.exit_code = run.exit_code;
      s.stdout_text = run.out;
      s.report = kr::test::slurp(out);
      s.avg_csv = kr::test::slurp(dir.file("report_avg_profile.csv"));
      s.tail_csv = kr::test::slurp(dir.file("report_tail_profile.csv"));
      return s;
    };

    std::vector<Snapshot> runs;
    for (int i = 0; i < 3; ++i) runs.push_back(snapshot(""));
    runs.push_back(snapshot(" --threads 1"));
    runs.push_back(snapshot(" --threads 8"));

    for (const auto& s : runs) {
      if (s.exit_code != golden.expected_exit) {
        ok = false;
        detail = golden.config + " exited " + std::to_string(s.exit_code) +
                 ", expected " + std::to_string(golden.expected_exit);
      }
      if (s.report.empty() || s.avg_csv.empty() || s.tail_csv.empty()) {
        ok = false;
        detail = golden.config + " left an output file empty";
      }
      if (s.stdout_text != runs[0].stdout_text || s.report != runs[0].report ||
          s.avg_csv != runs[0].avg_csv || s.tail_csv != runs[0].tail_csv) {
        ok = false;
        detail = golden.config + " produced different bytes across runs";
      }
    }
  }
  verdict(11, ok,
          ok ? "check emits byte-identical reports and profiles across three "
               "repeats and across 1 vs 8 worker threads on both golden "
               "configurations"
             : detail);
}

}  // namespace

int main() {
  criterion(1, criterion_norm_bound);
  criterion(2, criterion_pointwise_bound);
  criterion(3, criterion_ball_measure);
  criterion(4, criterion_averaging_identities);
  criterion(5, criterion_sinc_oracle);
  criterion(6, criterion_certification);
  criterion(7, criterion_refutation);
  criterion(8, criterion_translation);
  criterion(9, criterion_lipschitz_layer);
  criterion(10, criterion_density);
  criterion(11, criterion_determinism);
  return failures;
}
