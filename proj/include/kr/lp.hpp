#pragma once

#include <vector>

#include "kr/space.hpp"

namespace kr {

struct LpConfig {
  double p;
  explicit LpConfig(double exponent);
  // Conjugate exponent q with 1/p + 1/q = 1; +inf when p = 1.
  double conjugate() const;
  // 1/q = 1 - 1/p; 0 when p = 1, so mu^(1/q) degrades to 1 via pow(mu, 0).
  double inv_conjugate() const { return 1.0 - 1.0 / p; }
};

// A function on a finite metric measure space, stored as one value per point.
class LpFunction {
public:
  LpFunction(SpacePtr space, std::vector<double> values);
  const MetricMeasureSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

private:
  SpacePtr space_;
  std::vector<double> values_;
};

// Non-empty list of functions sharing one space.
class FunctionFamily {
public:
  FunctionFamily(SpacePtr space, std::vector<std::vector<double>> members);
  static FunctionFamily from_functions(const std::vector<LpFunction>& fns);
  const MetricMeasureSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t count() const { return members_.size(); }
  const std::vector<std::vector<double>>& member_values() const { return members_; }
  LpFunction member(std::size_t i) const { return {space_, members_[i]}; }

private:
  SpacePtr space_;
  std::vector<std::vector<double>> members_;
};

// (sum_i |v_i|^p w_i)^(1/p), compensated summation in index order.
double lp_norm(const LpFunction& f, const LpConfig& cfg);
double lp_distance(const LpFunction& f, const LpFunction& g, const LpConfig& cfg);

// f restricted to the set, zero elsewhere (exact zeros).
LpFunction mask(const LpFunction& f, const PointSet& set);

// || f restricted to the complement of E ||_p.
double tail_norm(const LpFunction& f, const PointSet& E, const LpConfig& cfg);

// Points where |f| exceeds the tolerance (strictly).
PointSet support(const LpFunction& f, double tol = 0.0);

// Cyclic shift by `steps` grid positions; periodic grids only.
// result(i) = f(i - steps mod n), i.e. the graph moves forward by steps*h.
LpFunction translate(const LpFunction& f, long long steps);

// max over members of lp_norm.
double family_bound(const FunctionFamily& family, const LpConfig& cfg);

}  // namespace kr
