#include "kr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kr/kernels.hpp"
#include "kr/numerics.hpp"

namespace kr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

void require_grid_coordinate(const MetricMeasureSpace& space) {
  require(space.coord_dim() == 1 && space.size() > 0,
          "generator needs a one-dimensional grid coordinate");
}

}  // namespace

LpFunction random_function(SpacePtr space, double amplitude, std::uint64_t seed) {
  require(space != nullptr, "null space");
  require(amplitude > 0.0, "amplitude must be positive");
  Rng rng(seed);
  std::vector<double> values(space->size());
  for (auto& v : values) v = rng.uniform(-amplitude, amplitude);
  return {std::move(space), std::move(values)};
}

LpFunction random_lipschitz_function(SpacePtr space, double bound,
                                     std::uint64_t seed) {
  require(space != nullptr, "null space");
  require(bound > 0.0, "bound must be positive");
  Rng rng(seed);
  const std::size_t n = space->size();
  std::vector<double> raw(n);
  for (auto& v : raw) v = rng.uniform(-bound, bound);
  // Largest bound-Lipschitz minorant of the raw draw, evaluated at every
  // point; anchoring the raw values instead would just reproduce the noise.
  std::vector<double> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = space->dist_row(x);
    double best = kInf;
    for (std::size_t a = 0; a < n; ++a)
      best = std::min(best, raw[a] + bound * row[a]);
    out[x] = best;
  }
  return {std::move(space), std::move(out)};
}

PartialFunction random_partial(SpacePtr space, std::size_t anchor_count,
                               double bound, std::uint64_t seed) {
  require(space != nullptr, "null space");
  require(anchor_count >= 1 && anchor_count <= space->size(),
          "anchor count out of range");
  auto source = random_lipschitz_function(space, bound, seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  // Partial Fisher-Yates draw of anchor_count distinct indices.
  std::vector<std::size_t> pool = all_indices(space->size());
  PartialFunction partial;
  partial.space = space;
  partial.bound = bound;
  for (std::size_t i = 0; i < anchor_count; ++i) {
    const std::size_t j = i + rng.index(pool.size() - i);
    std::swap(pool[i], pool[j]);
    partial.domain.push_back(pool[i]);
    partial.values.push_back(source[pool[i]]);
  }
  return partial;
}

FunctionFamily oscillation_family(SpacePtr space, std::size_t k_max) {
  require(space != nullptr, "null space");
  require(k_max >= 1, "need at least one frequency");
  require(space->periodic_shift_step().has_value(),
          "oscillation family needs a periodic grid");
  require_grid_coordinate(*space);
  std::vector<std::vector<double>> members;
  members.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<double> values(space->size());
    for (std::size_t i = 0; i < space->size(); ++i)
      values[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(k) *
                           space->coord(i, 0));
    members.push_back(std::move(values));
  }
  return {std::move(space), std::move(members)};
}

FunctionFamily bump_family(SpacePtr space, std::size_t count, double spacing,
                           double width) {
  require(space != nullptr, "null space");
  require(count >= 1, "need at least one bump");
  require(spacing > 0.0 && width > 0.0, "spacing and width must be positive");
  require_grid_coordinate(*space);
  std::vector<std::vector<double>> members;
  members.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double center = spacing * static_cast<double>(j);
    std::vector<double> values(space->size());
    for (std::size_t i = 0; i < space->size(); ++i) {
      const double t = std::abs(space->coord(i, 0) - center) / width;
      values[i] = t < 1.0 ? 1.0 - t : 0.0;
    }
    members.push_back(std::move(values));
  }
  return {std::move(space), std::move(members)};
}

FunctionFamily random_class_family(SpacePtr space, std::size_t count,
                                   const LipschitzClassSpec& spec, double margin,
                                   std::uint64_t seed) {
  require(space != nullptr, "null space");
  require(count >= 1, "need at least one member");
  require(margin > 0.0 && margin < 1.0, "margin must lie in (0,1)");
  require(spec.base_point < space->size(), "base point out of range");
  const std::size_t n = space->size();
  const double bound = spec.bound;

  // Support cone: cap(x) = bound * distance from x to the complement of
  // B(base, bound); clamping against it pins the support without breaking
  // the Lipschitz bound (a median of bound-Lipschitz functions).
  const auto base_row = space->dist_row(spec.base_point);
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < n; ++i)
    if (base_row[i] > bound) outside.push_back(i);
  std::vector<double> cap(n, kInf);
  if (!outside.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = kInf;
      for (std::size_t o : outside) d = std::min(d, space->dist(i, o));
      cap[i] = bound * d;
    }
  }

  Rng rng(seed);
  std::vector<std::vector<double>> members;
  members.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<double> raw(n);
    for (auto& v : raw) v = rng.uniform(-bound, bound);
    std::vector<double> f;
    kernels::mcshane_fill(*space, all_indices(n), raw, bound, f);
    for (std::size_t i = 0; i < n; ++i)
      f[i] = std::clamp(f[i], -cap[i], cap[i]);

    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i)
      acc.add(abs_pow(f[i], spec.cfg.p) * space->weight(i));
    const double norm = root_p(acc.value(), spec.cfg.p);
    const double lip = kernels::pairwise_lipschitz(*space, f);
    const double peak = std::max(norm, lip);
    if (peak > 0.0) {
      const double scale = margin * bound / peak;
      for (auto& v : f) v *= scale;
    }
    members.push_back(std::move(f));
  }
  return {std::move(space), std::move(members)};
}

FunctionFamily build_family(SpacePtr space, const FamilySpec& spec,
                            const LpConfig& cfg) {
  switch (spec.kind) {
    case FamilySpec::Kind::Oscillation:
      return oscillation_family(std::move(space), spec.k_max);
    case FamilySpec::Kind::TranslateBumps:
      return bump_family(std::move(space), spec.count, spec.spacing, spec.width);
    case FamilySpec::Kind::RandomClass: {
      LipschitzClassSpec cls{spec.class_bound, spec.base_point, cfg};
      return random_class_family(std::move(space), spec.count, cls, spec.margin,
                                 spec.seed);
    }
    case FamilySpec::Kind::Explicit:
      return {std::move(space), spec.members};
  }
  throw std::invalid_argument("unknown family generator");
}

}  // namespace kr
