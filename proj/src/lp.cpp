#include "kr/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kr/numerics.hpp"

namespace kr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_same_space(const MetricMeasureSpace& a, const MetricMeasureSpace& b) {
  require(&a == &b || a.hash() == b.hash(), "functions live on different spaces");
}

double norm_of_values(const MetricMeasureSpace& space,
                      const std::vector<double>& values, const LpConfig& cfg) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < values.size(); ++i)
    sum.add(abs_pow(values[i], cfg.p) * space.weight(i));
  return root_p(sum.value(), cfg.p);
}

}  // namespace

LpConfig::LpConfig(double exponent) : p(exponent) {
  require(std::isfinite(p) && p >= 1.0, "exponent p must be finite and >= 1");
}

double LpConfig::conjugate() const {
  return p == 1.0 ? kInf : p / (p - 1.0);
}

LpFunction::LpFunction(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  require(space_ != nullptr, "function needs a space");
  require(values_.size() == space_->size(), "value count does not match the space");
  for (double v : values_) require(std::isfinite(v), "function values must be finite");
}

FunctionFamily::FunctionFamily(SpacePtr space, std::vector<std::vector<double>> members)
    : space_(std::move(space)), members_(std::move(members)) {
  require(space_ != nullptr, "family needs a space");
  require(!members_.empty(), "family must contain at least one member");
  for (const auto& m : members_) {
    require(m.size() == space_->size(), "member size does not match the space");
    for (double v : m) require(std::isfinite(v), "member values must be finite");
  }
}

FunctionFamily FunctionFamily::from_functions(const std::vector<LpFunction>& fns) {
  require(!fns.empty(), "family must contain at least one member");
  std::vector<std::vector<double>> members;
  members.reserve(fns.size());
  for (const auto& f : fns) {
    require_same_space(fns[0].space(), f.space());
    members.push_back(f.values());
  }
  return {fns[0].space_ptr(), std::move(members)};
}

double lp_norm(const LpFunction& f, const LpConfig& cfg) {
  return norm_of_values(f.space(), f.values(), cfg);
}

double lp_distance(const LpFunction& f, const LpFunction& g, const LpConfig& cfg) {
  require_same_space(f.space(), g.space());
  CompensatedSum sum;
  for (std::size_t i = 0; i < f.size(); ++i)
    sum.add(abs_pow(f[i] - g[i], cfg.p) * f.space().weight(i));
  return root_p(sum.value(), cfg.p);
}

LpFunction mask(const LpFunction& f, const PointSet& set) {
  require(set.size() == f.size(), "point set does not match the space");
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (set.contains(i)) out[i] = f[i];
  return {f.space_ptr(), std::move(out)};
}

double tail_norm(const LpFunction& f, const PointSet& E, const LpConfig& cfg) {
  require(E.size() == f.size(), "point set does not match the space");
  CompensatedSum sum;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!E.contains(i)) sum.add(abs_pow(f[i], cfg.p) * f.space().weight(i));
  return root_p(sum.value(), cfg.p);
}

PointSet support(const LpFunction& f, double tol) {
  require(tol >= 0.0, "support tolerance must be non-negative");
  PointSet s(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) > tol) s.insert(i);
  return s;
}

LpFunction translate(const LpFunction& f, long long steps) {
  require(f.space().periodic_shift_step().has_value(),
          "translation is defined only on periodic grids");
  const long long n = static_cast<long long>(f.size());
  std::vector<double> out(f.size());
  for (long long i = 0; i < n; ++i) {
    const long long src = ((i - steps) % n + n) % n;
    out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(src)];
  }
  return {f.space_ptr(), std::move(out)};
}

double family_bound(const FunctionFamily& family, const LpConfig& cfg) {
  double best = 0.0;
  for (std::size_t m = 0; m < family.count(); ++m)
    best = std::max(best, norm_of_values(family.space(), family.member_values()[m], cfg));
  return best;
}

}  // namespace kr
