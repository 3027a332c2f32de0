#pragma once

#include <cstdint>
#include <vector>

#include "kr/lipschitz.hpp"
#include "kr/lp.hpp"
#include "kr/space.hpp"

namespace kr {

// Independent uniform values in [-amplitude, amplitude].
LpFunction random_function(SpacePtr space, double amplitude, std::uint64_t seed);

// Lower envelope min_a (g(a) + bound * d(a, x)) of a random g; always
// bound-Lipschitz, values within [-bound, bound].
LpFunction random_lipschitz_function(SpacePtr space, double bound,
                                     std::uint64_t seed);

// Random anchors sampled from a random bound-Lipschitz function, so the
// prescribed values are always extendable at that bound.
PartialFunction random_partial(SpacePtr space, std::size_t anchor_count,
                               double bound, std::uint64_t seed);

// sin(2*pi*k*x) for k = 1..k_max over the grid coordinate; periodic
// one-dimensional grids only.
FunctionFamily oscillation_family(SpacePtr space, std::size_t k_max);

// Unit-height tent bumps of the given half-width centered at
// spacing * j, j = 0..count-1, over the grid coordinate.
FunctionFamily bump_family(SpacePtr space, std::size_t count, double spacing,
                           double width);

// Members of the ball-norm-slope class of `spec`, built by clamping random
// Lipschitz envelopes against the class's support cone and rescaling so
// max(lip, norm) = margin * bound; margin in (0,1) leaves deformation slack.
FunctionFamily random_class_family(SpacePtr space, std::size_t count,
                                   const LipschitzClassSpec& spec, double margin,
                                   std::uint64_t seed);

// Generator description as loaded from config files.
struct FamilySpec {
  enum class Kind { Oscillation, TranslateBumps, RandomClass, Explicit };
  Kind kind = Kind::Explicit;
  std::size_t k_max = 0;       // Oscillation
  std::size_t count = 0;       // TranslateBumps / RandomClass
  double spacing = 0.0;        // TranslateBumps
  double width = 1.0;          // TranslateBumps
  double class_bound = 1.0;    // RandomClass
  std::size_t base_point = 0;  // RandomClass
  double margin = 0.9;         // RandomClass
  std::uint64_t seed = 0;      // RandomClass
  std::vector<std::vector<double>> members;  // Explicit
};

FunctionFamily build_family(SpacePtr space, const FamilySpec& spec,
                            const LpConfig& cfg);

}  // namespace kr
