#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "budget.hpp"
#include "clutter.hpp"

namespace clutterforge {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

std::string to_string(const Rational& r);  // "p/q", or "p" for integers

/// Weight per ground element; kInfinity is allowed where documented.
using Weight = std::int64_t;
inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max();
using WeightVector = std::vector<Weight>;

/// All extreme points of Q(C) = {x >= 0 : M(C)x >= 1}, sorted. Computed by
/// exact double description on the homogenized cone. Throws TooLarge when
/// |V| exceeds the budget's vertex_enum_ground.
std::vector<RationalVector> extreme_points(const Clutter& c, const Budget& budget = default_budget());

struct FractionalPoint {
  RationalVector x;
  std::vector<int> tight_members;  // member indices with M_C x = 1
  std::vector<int> tight_bounds;   // elements with x_v = 0
};

struct IdealnessCertificate {
  bool integral = true;
  std::size_t extreme_point_count = 0;
  std::size_t fractional_count = 0;
  std::optional<FractionalPoint> fractional;  // the first fractional point
};

IdealnessCertificate is_ideal(const Clutter& c, const Budget& budget = default_budget());

/// Tight rows of x and whether x is a feasible extreme point of Q(C) (tight
/// rows of full column rank, checked by exact elimination).
FractionalPoint tight_system(const Clutter& c, const RationalVector& x);
bool is_extreme_point(const Clutter& c, const RationalVector& x);

/// Rank of a rational matrix by exact Gaussian elimination.
int rank(std::vector<RationalVector> rows);

/// Minimum weight cover; elements of weight kInfinity are never chosen.
/// Returns kInfinity when no cover avoids them (or a member is empty).
Weight tau(const Clutter& c, const WeightVector& w, const Budget& budget = default_budget());
/// Optimal cover as an element mask (absent when tau is infinite).
std::optional<Mask> min_cover(const Clutter& c, const WeightVector& w, const Budget& budget = default_budget());

/// Maximum packing: integer member multiplicities with element loads <= w.
/// Weights must be finite; returns kInfinity when C has the empty member.
Weight nu(const Clutter& c, const WeightVector& w, const Budget& budget = default_budget());
/// Multiplicity per member of an optimal packing.
std::vector<Weight> max_packing(const Clutter& c, const WeightVector& w, const Budget& budget = default_budget());

struct LinearOptimum {
  Rational value;
  RationalVector primal;  // optimal x (tau*) or y (nu*)
};

/// min w.x over Q(C), attained at an extreme point.
LinearOptimum tau_star(const Clutter& c, const WeightVector& w, const Budget& budget = default_budget());
/// max 1.y subject to M(C)^T y <= w, y >= 0, by exact simplex.
LinearOptimum nu_star(const Clutter& c, const WeightVector& w);

WeightVector unit_weights(const Clutter& c);

bool packs(const Clutter& c, const Budget& budget = default_budget());

/// A minor that does not pack, or absent when every minor packs.
std::optional<MinorSpec> has_packing_property(const Clutter& c, const Budget& budget = default_budget());

struct MfmcViolation {
  WeightVector w;
  Weight tau = 0;
  Weight nu = 0;
};

/// Searches weights with entries in {0..max_weight}, plus a "large" value
/// standing in for contraction when `with_large` is set. A refuter only:
/// absence proves nothing beyond the searched weights.
std::optional<MfmcViolation> mfmc_check(const Clutter& c, Weight max_weight, bool with_large = true,
                                        const Budget& budget = default_budget());

/// The weight that plays the role of contraction in mfmc_check.
Weight large_weight(const Clutter& c, Weight max_weight);

}  // namespace clutterforge
