#pragma once

#include <cstdint>
#include <vector>

#include "kr/lp.hpp"
#include "kr/space.hpp"

namespace kr {

// max over pairs with positive distance of |f(i)-f(j)| / d(i,j);
// 0 by convention on a single-point space.
double lipschitz_constant(const LpFunction& f);

// A function prescribed on part of the space together with the Lipschitz
// bound the extension must respect.
struct PartialFunction {
  SpacePtr space;
  std::vector<std::size_t> domain;
  std::vector<double> values;
  double bound = 1.0;
};

// Largest-minorant extension: result(x) = min over anchors a of
// (value(a) + bound * d(a, x)).  Anchor points keep their value exactly;
// the result is bound-Lipschitz up to roundoff.
LpFunction mcshane_extend(const PartialFunction& partial);

// The class { f : ||f||_p <= bound, lip(f) <= bound, supp f inside
// B(base_point, bound) }.
struct LipschitzClassSpec {
  double bound;
  std::size_t base_point;
  LpConfig cfg;
};

struct LipschitzClassCheck {
  bool member = false;
  double norm = 0.0;
  double lip = 0.0;
  std::size_t support_violations = 0;
  std::size_t first_violation = 0;  // meaningful when support_violations > 0
};

LipschitzClassCheck in_lipschitz_class(const LpFunction& f,
                                       const LipschitzClassSpec& spec);

// Uniform shrink toward zero: (1 - epsilon/bound) * f.  Keeps the class,
// drops the Lipschitz constant to (1 - epsilon/bound) * lip(f) <= bound -
// epsilon, and moves f by exactly (epsilon/bound) * ||f||_p <= epsilon.
LpFunction scale_deformation(const LpFunction& f, const LipschitzClassSpec& spec,
                             double epsilon);

struct SpikeReport {
  LpFunction result;
  double r1 = 0.0;        // outer radius of the modified region
  double r2 = 0.0;        // tent-plateau radius
  double m = 0.0;         // max(lip(f), ||f||_p)
  double deviation = 0.0;  // ||result - f||_p
  double achieved_lip = 0.0;
  // True when some z != base point lies within r2, i.e. the tent realizes
  // the full slope between grid points; otherwise the constant degrades.
  bool spike_pair_present = false;
};

// Plants a tent of slope `bound` centered at the base point, leaving f
// untouched outside B(base, r1); the transition annulus is filled by the
// bound-constant extension.  Requires eps <= bound - m.
SpikeReport spike_deformation(const LpFunction& f, const LipschitzClassSpec& spec,
                              double epsilon, std::size_t y0);

// Disjoint-ball ramp approximant: constant a_i on the inner ball, linear
// decay to 0 across the annulus, zero elsewhere.
struct DensityApproximant {
  std::vector<std::size_t> centers;
  std::vector<double> outer_radii;
  std::vector<double> inner_radii;
  std::vector<double> levels;  // all nonzero
  std::vector<double> g;       // assembled values
  double achieved_error = 0.0;
  double lip = 0.0;
};

std::vector<double> assemble_ramp(const MetricMeasureSpace& space,
                                  const std::vector<std::size_t>& centers,
                                  const std::vector<double>& outer_radii,
                                  const std::vector<double>& inner_radii,
                                  const std::vector<double>& levels);

// Finds a ramp function with ||g - f||_p <= epsilon by refining a greedy
// disjoint-ball cover; ball radii are snapped strictly between the distance
// ladder values of their center, so inner and outer balls hold the same
// points and the annulus term vanishes on finite spaces.
DensityApproximant density_approximant(const LpFunction& f, double epsilon,
                                       const LpConfig& cfg);

}  // namespace kr
