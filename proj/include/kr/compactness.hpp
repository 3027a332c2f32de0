#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kr/lp.hpp"
#include "kr/numerics.hpp"
#include "kr/space.hpp"

namespace kr {

// Default radius grid: diameter * 2^-j, descending down to (and including)
// the first value below the minimum separation; returned ascending.
// {1.0} on degenerate spaces with no positive distances.
std::vector<double> dyadic_radius_grid(const MetricMeasureSpace& space);

struct TailCandidate {
  double radius = 0.0;
  PointSet set;
};

// Growing exhaustion B(base_point, 2^k), k from floor(log2(min separation))
// to ceil(log2(diameter)), radii above radius_cap dropped.  The largest
// candidate covers the whole space when the cap permits.  A space with no
// positive distances yields the single candidate (1.0, everything).
std::vector<TailCandidate> ball_exhaustion(const MetricMeasureSpace& space,
                                           std::size_t base_point,
                                           double radius_cap);

// A measured violation: which member, at which radius / shift / candidate,
// with the offending value.
struct ConditionWitness {
  std::size_t member = 0;
  double radius = 0.0;
  double value = 0.0;
};

struct AvgConditionResult {
  bool passed = false;
  // Largest grid value such that every grid radius strictly below it keeps
  // sup_f ||A_r f - f||_p below the budget.  Meaningful when passed.
  double delta = 0.0;
  ConditionWitness witness;  // meaningful when !passed
  std::vector<double> radii;
  std::vector<double> max_deviation;  // aligned with radii
};

// Fails iff the smallest grid radius already violates the budget; the
// witness then points at the worst member on that radius.
AvgConditionResult check_condition_avg(const FunctionFamily& family,
                                       double epsilon,
                                       const std::vector<double>& radius_grid,
                                       const LpConfig& cfg);

struct TailConditionResult {
  bool passed = false;
  double radius = 0.0;  // chosen candidate when passed, largest tried otherwise
  PointSet set;         // chosen candidate set when passed
  ConditionWitness witness;  // meaningful when !passed
  std::vector<double> candidate_radii;
  std::vector<double> max_tail;  // aligned with candidate_radii
};

// Smallest candidate E with max_f || f restricted off E ||_p under the
// budget; failure reports the worst member on the largest candidate.
TailConditionResult check_condition_tail(const FunctionFamily& family,
                                         double epsilon,
                                         const std::vector<TailCandidate>& candidates,
                                         const LpConfig& cfg);

// Pairwise disjoint balls centered in a target set, covering it up to a
// residual of prescribed measure.
struct VitaliSelection {
  std::vector<std::size_t> centers;
  std::vector<double> radii;  // radii[i] < delta(centers[i])
  PointSet residual;          // target set minus the union of the balls
  double residual_measure = 0.0;
};

// Greedy construction.  Points of the target set are visited in order of
// decreasing candidate radius (ties by index); the candidate radius is the
// largest distance from the point that stays below delta(point), halved
// until the ball is disjoint from the accepted ones, with a floor of
// min(min separation, delta(point)) / 2 at which the ball degenerates to
// the point itself and disjointness is automatic.  Stops as soon as the
// residual measure drops below the target.
VitaliSelection vitali_selection(const MetricMeasureSpace& space,
                                 const PointSet& domain,
                                 const std::vector<double>& deltas,
                                 double residual_target);

// Finite net of simple functions (constant levels on the selection balls,
// zero elsewhere) certified against the averaged family on the domain.
struct EpsilonNet {
  SpacePtr space;
  double epsilon = 0.0;
  double avg_radius = 0.0;
  PointSet domain;
  VitaliSelection selection;
  double level_spacing = 0.0;
  // element_levels[e][i] = level of element e on ball i of the selection.
  std::vector<std::vector<double>> element_levels;
  // Element realized by quantizing member m's own averages.
  std::vector<std::size_t> member_assigned_element;
  // Nearest element and its distance ||(A_r f) on domain - element||_p.
  std::vector<std::size_t> member_element;
  std::vector<double> member_distance;
  bool certified = false;  // every member_distance < epsilon
};

// Builds the net: measures the averaged family's modulus of continuity at
// each domain point, selects disjoint balls where it stays below
// epsilon * mu(domain)^(-1/p) / 4, quantizes the averaged values at the
// ball centers on a uniform grid of spacing epsilon * mu(domain)^(-1/p) / 2,
// keeps one element per realized level combination, and certifies every
// member against its nearest element.  A family of all-zero functions
// yields the single zero element.
EpsilonNet construct_epsilon_net(const FunctionFamily& family, double epsilon,
                                 double avg_radius, const PointSet& domain,
                                 const LpConfig& cfg);

// Element e materialized as one value per point of the space.
std::vector<double> net_element_values(const EpsilonNet& net, std::size_t element);

// Brute-force cross-validation net whose elements are family members.
struct GreedyNet {
  std::vector<std::size_t> elements;  // member indices, insertion order
  std::vector<std::size_t> member_element;
  std::vector<double> member_distance;
  double achieved = 0.0;  // final max-min distance
  // Max-min distance immediately before the last insertion (+inf when the
  // net is a single element); a packing-style lower-bound diagnostic.
  double final_gap = 0.0;
};

// Farthest-point insertion, starting from member 0, until every member is
// within epsilon (ties broken by smallest member index).
GreedyNet greedy_net_oracle(const FunctionFamily& family, double epsilon,
                            const LpConfig& cfg);

struct TranslationConditionResult {
  bool passed = false;
  double delta = 0.0;        // largest certified shift magnitude
  ConditionWitness witness;  // meaningful when !passed; radius = shift size
  std::vector<double> shifts;
  std::vector<double> max_deviation;  // aligned with shifts
};

// Classical translation test on periodic grids: checks
// || f shifted by j steps - f ||_p against the budget for j = 1..max_steps.
// delta = h * (first failing j), or h * max_steps when none fail; fails iff
// the single-step shift already violates the budget.
TranslationConditionResult kr_translation_condition(const FunctionFamily& family,
                                                    double epsilon,
                                                    std::size_t max_steps,
                                                    const LpConfig& cfg);

enum class Verdict { CertifiedPrecompact, Condition1Failed, Condition2Failed };

// "certified-precompact" | "condition1-failed" | "condition2-failed"
std::string verdict_label(Verdict v);

struct CompactnessOptions {
  std::vector<double> radius_grid;  // empty: dyadic default
  std::size_t tail_base_point = 0;
  double tail_radius_cap = kInf;
};

struct CompactnessReport {
  Verdict verdict = Verdict::CertifiedPrecompact;
  double epsilon = 0.0;
  std::optional<double> delta;
  std::optional<double> tail_radius;
  std::optional<PointSet> tail_set;
  std::optional<EpsilonNet> net;
  // Strict upper bound on the re-measured distance from any member to its
  // assigned net element, whole-space norm.
  std::optional<double> certified_radius;
  std::optional<ConditionWitness> witness;
  // Profiles of both condition checks, for tabulation.
  std::vector<double> avg_radii, avg_max_deviation;
  std::vector<double> tail_radii, tail_max;
};

// Tail check at half budget, then average check at half budget, then the
// net at full budget over the accepted tail set, using the largest passing
// grid radius.  The certified radius is reported as achieved rather than
// as the nominal 2 * epsilon of the budget arithmetic.
CompactnessReport is_relatively_compact(const FunctionFamily& family,
                                        double epsilon, const LpConfig& cfg,
                                        const CompactnessOptions& options = {});

}  // namespace kr
