#pragma once

#include <vector>

#include "kr/lp.hpp"
#include "kr/space.hpp"

namespace kr {

// Ball average operator: (A_r f)(x) = mean of f over the closed ball B(x,r)
// with respect to the point weights.  Computed in the centered form
// f(x) + avg(f - f(x)), which reproduces constants exactly and leaves f
// untouched bit-for-bit wherever the ball is the singleton {x}.
LpFunction average(const LpFunction& f, double radius);

// A_r applied to every member at once; result indexed [member][point].
std::vector<std::vector<double>> family_average_values(const FunctionFamily& family,
                                                       double radius);

struct PointwiseBoundReport {
  // min over x of  ||f restricted to B(x,r)||_p * mu(B(x,r))^(-1/p) - |A_r f(x)|
  double min_slack = 0.0;
  std::size_t witness = 0;
};

PointwiseBoundReport pointwise_bound_check(const LpFunction& f, double radius,
                                           const LpConfig& cfg);

// gamma^(1/p) * ||f||_p - ||A_r f||_p  (gamma: exact doubling constant).
double norm_bound_check(const LpFunction& f, double radius, const LpConfig& cfg,
                        double gamma);

struct AverageProfile {
  std::vector<double> radii;
  // deviations[radius_index][member] = || A_r f - f ||_p
  std::vector<std::vector<double>> deviations;
};

AverageProfile differentiation_profile(const FunctionFamily& family,
                                       std::vector<double> radii,
                                       const LpConfig& cfg);

// max over members of |A_r f(x) - A_r f(y)|, evaluated directly.
double equicontinuity_modulus(const FunctionFamily& family, double radius,
                              std::size_t x, std::size_t y);

}  // namespace kr
