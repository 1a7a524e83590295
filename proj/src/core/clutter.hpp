#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "budget.hpp"
#include "matroid.hpp"
#include "vspace.hpp"

namespace clutterforge {

/// Element of a clutter ground set. Elements built by mult carry the
/// coordinate (`part`, 0-based) and field value; generic elements have
/// part == -1 and an integer label in `value`.
struct GroundElement {
  int part = -1;
  int value = 0;

  bool operator==(const GroundElement&) const = default;
  auto operator<=>(const GroundElement&) const = default;
};

/// "i:v" with 1-based part for mult elements, the plain label otherwise.
std::string element_label(const GroundElement& e);

class Clutter {
 public:
  Clutter() = default;
  /// Members are minimalized, deduplicated and sorted.
  Clutter(std::vector<GroundElement> ground, std::vector<Mask> members);

  int size() const { return static_cast<int>(ground_.size()); }
  const std::vector<GroundElement>& ground() const { return ground_; }
  const std::vector<Mask>& members() const { return members_; }
  int index_of(const GroundElement& e) const;  // -1 when absent
  Mask full() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }

  std::string to_text() const;
  bool operator==(const Clutter& o) const { return ground_ == o.ground_ && members_ == o.members_; }

 private:
  std::vector<GroundElement> ground_;
  std::vector<Mask> members_;
};

/// Generic clutter on labels 1..n; members given as 1-based label lists.
Clutter make_clutter(int n, const std::vector<std::vector<int>>& members);
Clutter parse_clutter(const std::string& text);

/// Inclusion-minimal sets (the empty set dominates everything), sorted.
std::vector<Mask> minimal_sets(std::vector<Mask> sets);

Clutter mult(const SetSystem& s);
Clutter mult(const Subspace& s);

struct MinorSpec {
  Mask deleted = 0;
  Mask contracted = 0;
};

Clutter minor(const Clutter& c, const MinorSpec& m);

/// Ground sets are concatenated; if labels collide the second factor's
/// parts (or generic labels) are shifted past the first.
Clutter product(const Clutter& a, const Clutter& b);

/// mult(S) with the element v_i of each part contracted.
Clutter localization(const Subspace& s, const Point& v);

/// Bijection image[i] = element of b matched to element i of a. Throws
/// TooLarge past the configured ground size.
std::optional<std::vector<int>> is_isomorphic(const Clutter& a, const Clutter& b,
                                              const Budget& budget = default_budget());

struct MinorWitness {
  MinorSpec spec;
  std::vector<int> map;  // target element i -> ground index in the host clutter
};

/// Searches for `target` as a minor of `c`. Throws BudgetExceeded when the
/// node budget runs out before the search is complete.
std::optional<MinorWitness> find_minor(const Clutter& c, const Clutter& target,
                                       const Budget& budget = default_budget());

/// Re-derives the minor and checks it against `target` under the map.
bool check_minor_witness(const Clutter& c, const Clutter& target, const MinorWitness& w);

/// `I={…} J={…} map: x→y …`
std::string minor_certificate(const Clutter& c, const Clutter& target, const MinorWitness& w);

enum class Builtin { Delta3, Q6, C5sq };
const char* builtin_name(Builtin b);
Clutter builtin(Builtin b);

/// Rows are incidence vectors of the members in decreasing lexicographic order.
std::vector<std::vector<int>> incidence_matrix(const Clutter& c);

}  // namespace clutterforge
