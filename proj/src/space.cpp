#include "kr/space.hpp"

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

std::vector<double> flatten_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    require(rows[i].size() == n, "distance matrix is not square");
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = rows[i][j];
  }
  return flat;
}

double euclid(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double t = a[d] - b[d];
    s += t * t;
  }
  return std::sqrt(s);
}

std::vector<double> pairwise_from_coords(const std::vector<double>& coords,
                                         std::size_t n, std::size_t dim) {
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclid(coords.data() + i * dim, coords.data() + j * dim, dim);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }
  return dist;
}

}  // namespace

MetricMeasureSpace::MetricMeasureSpace(std::vector<double> dist,
                                       std::vector<double> weights,
                                       std::vector<double> coords,
                                       std::size_t coord_dim,
                                       std::optional<double> shift_step,
                                       Validation validation)
    : n_(weights.size()),
      dist_(std::move(dist)),
      weights_(std::move(weights)),
      coords_(std::move(coords)),
      coord_dim_(coord_dim),
      shift_step_(shift_step) {
  require(n_ >= 1, "space must contain at least one point");
  require(dist_.size() == n_ * n_, "distance matrix size does not match weight count");
  if (coord_dim_ > 0)
    require(coords_.size() == n_ * coord_dim_, "coordinate block size mismatch");

  for (std::size_t i = 0; i < n_; ++i) {
    require(std::isfinite(weights_[i]) && weights_[i] > 0.0,
            "weight " + std::to_string(i) + " is not strictly positive");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    require(dist_[i * n_ + i] == 0.0,
            "nonzero self-distance at point " + std::to_string(i));
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = dist_[i * n_ + j];
      require(std::isfinite(d) && d >= 0.0, "distances must be finite and non-negative");
      require(d == dist_[j * n_ + i], "distance matrix is not symmetric at (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }

  diameter_ = 0.0;
  min_separation_ = kInf;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = dist_[i * n_ + j];
      diameter_ = std::max(diameter_, d);
      if (d > 0.0) min_separation_ = std::min(min_separation_, d);
    }
  }

  const bool run_triangle = validation == Validation::On ||
                            (validation == Validation::Auto && n_ <= 512);
  if (run_triangle && n_ >= 3) {
    const auto scan = kernels::triangle_scan(dist_.data(), n_);
    const double tol = 1e-12 * diameter_;
    if (scan.worst > tol) {
      throw std::invalid_argument(
          "triangle inequality violated by " + std::to_string(scan.worst) +
          " at points (" + std::to_string(scan.i) + "," + std::to_string(scan.j) +
          "," + std::to_string(scan.k) + ")");
    }
  }

  CompensatedSum total;
  for (std::size_t i = 0; i < n_; ++i) total.add(weights_[i]);
  total_measure_ = total.value();

  ladder_.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (dist_[i * n_ + j] > 0.0) ladder_.push_back(dist_[i * n_ + j]);
  std::sort(ladder_.begin(), ladder_.end());
  ladder_.erase(std::unique(ladder_.begin(), ladder_.end()), ladder_.end());

  std::uint64_t h = fnv1a64("mms", 3);
  const std::uint64_t meta[3] = {n_, coord_dim_,
                                 shift_step_.has_value() ? 1ull : 0ull};
  h = fnv1a64(meta, sizeof meta, h);
  if (shift_step_) h = fnv1a64_double(*shift_step_, h);
  for (double d : dist_) h = fnv1a64_double(d, h);
  for (double w : weights_) h = fnv1a64_double(w, h);
  for (double c : coords_) h = fnv1a64_double(c, h);
  hash_ = hex64(h);
}

SpacePtr make_explicit_space(std::vector<std::vector<double>> dist,
                             std::vector<double> weights,
                             MetricMeasureSpace::Validation validation) {
  require(!dist.empty(), "empty distance matrix");
  require(dist.size() == weights.size(), "weight count does not match matrix size");
  return std::make_shared<MetricMeasureSpace>(flatten_matrix(dist), std::move(weights),
                                              std::vector<double>{}, 0, std::nullopt,
                                              validation);
}

SpacePtr make_explicit_coords(std::vector<std::vector<double>> coords,
                              std::vector<double> weights) {
  const std::size_t n = coords.size();
  require(n >= 1, "empty coordinate list");
  require(n == weights.size(), "weight count does not match point count");
  const std::size_t dim = coords[0].size();
  require(dim >= 1, "coordinates must have dimension >= 1");
  std::vector<double> flat(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    require(coords[i].size() == dim, "ragged coordinate list");
    for (std::size_t d = 0; d < dim; ++d) flat[i * dim + d] = coords[i][d];
  }
  auto dist = pairwise_from_coords(flat, n, dim);
  return std::make_shared<MetricMeasureSpace>(std::move(dist), std::move(weights),
                                              std::move(flat), dim, std::nullopt,
                                              MetricMeasureSpace::Validation::Off);
}

SpacePtr make_circle_grid(std::size_t n) {
  require(n >= 1, "circle grid needs at least one point");
  const double nd = static_cast<double>(n);
  std::vector<double> coords(n), weights(n, 1.0 / nd), dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) coords[i] = static_cast<double>(i) / nd;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t k = j - i;
      k = std::min(k, n - k);
      const double d = static_cast<double>(k) / nd;
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }
  return std::make_shared<MetricMeasureSpace>(std::move(dist), std::move(weights),
                                              std::move(coords), 1, 1.0 / nd,
                                              MetricMeasureSpace::Validation::Off);
}

SpacePtr make_line_grid(std::size_t n, double length) {
  require(n >= 2, "line grid needs at least two points");
  require(std::isfinite(length) && length > 0.0, "line grid length must be positive");
  const double h = length / static_cast<double>(n - 1);
  std::vector<std::vector<double>> coords(n);
  for (std::size_t i = 0; i < n; ++i)
    coords[i] = {length * static_cast<double>(i) / static_cast<double>(n - 1)};
  return make_explicit_coords(std::move(coords), std::vector<double>(n, h));
}

SpacePtr make_random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  require(n >= 1, "random cloud needs at least one point");
  require(dim >= 1, "random cloud dimension must be >= 1");
  Rng rng(seed);
  std::vector<std::vector<double>> coords(n);
  for (std::size_t i = 0; i < n; ++i) {
    coords[i].resize(dim);
    for (std::size_t d = 0; d < dim; ++d) coords[i][d] = rng.unit();
  }
  return make_explicit_coords(std::move(coords),
                              std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SpacePtr build_space(const SpaceSpec& spec) {
  switch (spec.kind) {
    case SpaceSpec::Kind::Explicit:
      if (!spec.dist.empty()) return make_explicit_space(spec.dist, spec.weights);
      if (!spec.coords.empty()) return make_explicit_coords(spec.coords, spec.weights);
      throw std::invalid_argument("explicit space needs coords or a distance matrix");
    case SpaceSpec::Kind::Circle:
      return make_circle_grid(spec.n);
    case SpaceSpec::Kind::LineGrid:
      return make_line_grid(spec.n, spec.length);
    case SpaceSpec::Kind::RandomCloud:
      return make_random_cloud(spec.n, spec.dim, spec.seed);
  }
  throw std::invalid_argument("unknown space kind");
}

PointSet PointSet::all(std::size_t n) {
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i) s.insert(i);
  return s;
}

PointSet PointSet::of(std::size_t n, const std::vector<std::size_t>& indices) {
  PointSet s(n);
  for (std::size_t i : indices) {
    require(i < n, "point index out of range");
    s.insert(i);
  }
  return s;
}

PointSet PointSet::complement() const {
  PointSet s(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (!mask_[i]) s.insert(i);
  return s;
}

std::vector<std::size_t> PointSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

double set_measure(const MetricMeasureSpace& space, const PointSet& set) {
  require(set.size() == space.size(), "point set does not match the space");
  CompensatedSum sum;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (set.contains(i)) sum.add(space.weight(i));
  return sum.value();
}

double set_diameter(const MetricMeasureSpace& space, const PointSet& set) {
  require(set.size() == space.size(), "point set does not match the space");
  const auto idx = set.indices();
  double best = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      best = std::max(best, space.dist(idx[a], idx[b]));
  return best;
}

PointSet ball(const MetricMeasureSpace& space, std::size_t center, double radius) {
  require(center < space.size(), "ball center out of range");
  require(radius > 0.0, "ball radius must be positive");
  PointSet s(space.size());
  const auto row = space.dist_row(center);
  for (std::size_t y = 0; y < space.size(); ++y)
    if (row[y] <= radius) s.insert(y);
  return s;
}

double ball_measure(const MetricMeasureSpace& space, std::size_t center,
                    double radius) {
  require(center < space.size(), "ball center out of range");
  require(radius > 0.0, "ball radius must be positive");
  CompensatedSum sum;
  const auto row = space.dist_row(center);
  for (std::size_t y = 0; y < space.size(); ++y)
    if (row[y] <= radius) sum.add(space.weight(y));
  return sum.value();
}

double symmetric_difference_measure(const MetricMeasureSpace& space, std::size_t x,
                                    std::size_t y, double radius) {
  require(x < space.size() && y < space.size(), "point index out of range");
  require(radius > 0.0, "radius must be positive");
  CompensatedSum sum;
  const auto rx = space.dist_row(x);
  const auto ry = space.dist_row(y);
  for (std::size_t z = 0; z < space.size(); ++z) {
    const bool in_x = rx[z] <= radius;
    const bool in_y = ry[z] <= radius;
    if (in_x != in_y) sum.add(space.weight(z));
  }
  return sum.value();
}

double min_ball_measure(const MetricMeasureSpace& space, const PointSet& E,
                        double radius) {
  require(E.size() == space.size(), "point set does not match the space");
  require(!E.empty(), "min ball measure needs a non-empty set");
  double best = kInf;
  for (std::size_t x = 0; x < space.size(); ++x)
    if (E.contains(x)) best = std::min(best, ball_measure(space, x, radius));
  return best;
}

double doubling_ratio(const MetricMeasureSpace& space, std::size_t x, double r) {
  require(x < space.size(), "point index out of range");
  require(r > 0.0, "radius must be positive");
  CompensatedSum inner, outer;
  const auto row = space.dist_row(x);
  const double r2 = 2.0 * r;
  for (std::size_t y = 0; y < space.size(); ++y) {
    const double d = row[y];
    const double w = space.weight(y);
    if (d <= r) inner.add(w);
    if (d <= r2) outer.add(w);
  }
  return outer.value() / inner.value();
}

DoublingReport doubling_constant(const MetricMeasureSpace& space) {
  const auto scan = kernels::doubling_scan(space);
  DoublingReport report;
  report.gamma = scan.gamma;
  report.witness_point = scan.point;
  report.witness_radius = scan.radius;
  const auto& ladder = space.distance_ladder();
  report.critical_radii.reserve(2 * ladder.size());
  for (double d : ladder) {
    report.critical_radii.push_back(d * 0.5);
    report.critical_radii.push_back(d);
  }
  std::sort(report.critical_radii.begin(), report.critical_radii.end());
  report.critical_radii.erase(
      std::unique(report.critical_radii.begin(), report.critical_radii.end()),
      report.critical_radii.end());
  return report;
}

}  // namespace kr
