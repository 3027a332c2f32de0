#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kr {

class MetricMeasureSpace;
using SpacePtr = std::shared_ptr<const MetricMeasureSpace>;

// Finite weighted metric measure space: a full distance matrix plus one
// strictly positive weight per point.  Immutable after construction; all
// operations take it by const reference and may run concurrently.
//
// Conventions used throughout the library:
//   * balls are closed: ball(x, r) = { y : d(x, y) <= r }, ties included;
//   * measures are sums of point weights, accumulated with compensated
//     summation in ascending point-index order.
class MetricMeasureSpace {
public:
  enum class Validation { Auto, On, Off };

  std::size_t size() const { return n_; }
  double dist(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  std::span<const double> dist_row(std::size_t i) const {
    return {dist_.data() + i * n_, n_};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  double total_measure() const { return total_measure_; }
  double diameter() const { return diameter_; }
  // Minimum positive pairwise distance; +inf on a single-point space.
  double min_separation() const { return min_separation_; }

  bool has_coords() const { return coord_dim_ > 0; }
  std::size_t coord_dim() const { return coord_dim_; }
  double coord(std::size_t i, std::size_t d) const {
    return coords_[i * coord_dim_ + d];
  }

  // Set only on periodic grids; the admissible translation step length.
  std::optional<double> periodic_shift_step() const { return shift_step_; }

  // Distinct positive pairwise distances, ascending.
  const std::vector<double>& distance_ladder() const { return ladder_; }

  // 64-bit content hash (size, distances, weights, coords) in hex; function
  // and family files carry it so loaders can reject mismatched data.
  const std::string& hash() const { return hash_; }

  MetricMeasureSpace(std::vector<double> dist, std::vector<double> weights,
                     std::vector<double> coords, std::size_t coord_dim,
                     std::optional<double> shift_step, Validation validation);

private:
  std::size_t n_ = 0;
  std::vector<double> dist_;     // row-major n x n
  std::vector<double> weights_;  // n, all > 0
  std::vector<double> coords_;   // n * coord_dim, may be empty
  std::size_t coord_dim_ = 0;
  std::optional<double> shift_step_;
  double total_measure_ = 0.0;
  double diameter_ = 0.0;
  double min_separation_ = 0.0;
  std::vector<double> ladder_;
  std::string hash_;
};

// Builders.  All are metric by construction except the raw matrix one,
// which under Validation::Auto gets the full triangle scan when n <= 512.
SpacePtr make_explicit_space(std::vector<std::vector<double>> dist,
                             std::vector<double> weights,
                             MetricMeasureSpace::Validation validation =
                                 MetricMeasureSpace::Validation::Auto);
SpacePtr make_explicit_coords(std::vector<std::vector<double>> coords,
                              std::vector<double> weights);
// n points on a circle of circumference 1: arc-length metric, spacing
// h = 1/n, weight h per point (total measure 1), shift step h.  The stored
// 1-d coordinate is the arc parameter i/n.
SpacePtr make_circle_grid(std::size_t n);
// n >= 2 points at i*length/(n-1) on a segment, uniform weight length/(n-1).
SpacePtr make_line_grid(std::size_t n, double length);
// n uniform points in [0,1)^dim, Euclidean metric, weight 1/n per point.
SpacePtr make_random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed);

struct SpaceSpec {
  enum class Kind { Explicit, Circle, LineGrid, RandomCloud };
  Kind kind = Kind::Explicit;
  std::vector<std::vector<double>> coords;  // Explicit (optional)
  std::vector<std::vector<double>> dist;    // Explicit (optional)
  std::vector<double> weights;              // Explicit
  std::size_t n = 0;                        // Circle / LineGrid / RandomCloud
  double length = 0.0;                      // LineGrid
  std::size_t dim = 0;                      // RandomCloud
  std::uint64_t seed = 0;                   // RandomCloud
};

SpacePtr build_space(const SpaceSpec& spec);

// Subset of points, stored as a membership mask.
class PointSet {
public:
  PointSet() = default;
  explicit PointSet(std::size_t n) : mask_(n, 0) {}
  static PointSet all(std::size_t n);
  static PointSet of(std::size_t n, const std::vector<std::size_t>& indices);

  std::size_t size() const { return mask_.size(); }
  bool contains(std::size_t i) const { return mask_[i] != 0; }
  void insert(std::size_t i) {
    count_ += mask_[i] == 0;
    mask_[i] = 1;
  }
  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }
  PointSet complement() const;
  std::vector<std::size_t> indices() const;
  bool operator==(const PointSet&) const = default;

private:
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

double set_measure(const MetricMeasureSpace& space, const PointSet& set);
double set_diameter(const MetricMeasureSpace& space, const PointSet& set);

PointSet ball(const MetricMeasureSpace& space, std::size_t center, double radius);
double ball_measure(const MetricMeasureSpace& space, std::size_t center, double radius);
// mu(B(x,r) symmetric-difference B(y,r)), single masked pass in index order.
double symmetric_difference_measure(const MetricMeasureSpace& space,
                                    std::size_t x, std::size_t y, double radius);
// min over centers x in E of mu(B(x, r)); E must be non-empty.
double min_ball_measure(const MetricMeasureSpace& space, const PointSet& E,
                        double radius);

// mu(B(x,2r)) / mu(B(x,r)), both measures from one index-order pass.
double doubling_ratio(const MetricMeasureSpace& space, std::size_t x, double r);

struct DoublingReport {
  double gamma = 1.0;
  std::size_t witness_point = 0;
  double witness_radius = 1.0;
  // Global breakpoint set: distinct positive distances and their halves.
  std::vector<double> critical_radii;
};

// Exact doubling constant: sup over centers and radii of doubling_ratio.
// The ratio is piecewise constant in r with breakpoints only where either
// ball gains a point, so scanning each center's breakpoints (distances from
// the center and their halves) plus one interior sample per gap is exhaustive.
DoublingReport doubling_constant(const MetricMeasureSpace& space);

}  // namespace kr
