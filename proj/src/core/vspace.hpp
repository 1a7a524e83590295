#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gf.hpp"

namespace clutterforge {

using Point = std::vector<Element>;
using Matrix = std::vector<Point>;

/// Reduced row echelon form over GF(q): leftmost nonzero pivot, scaled to 1,
/// eliminated above and below. Zero rows are dropped.
Matrix rref(const Field& f, Matrix rows);

/// Support of a vector as a coordinate bitmask (n <= 64).
std::uint64_t support_mask(const Point& x);

/// A coordinate subspace of GF(q)^n, stored by its canonical RREF basis.
class Subspace {
 public:
  Subspace(FieldPtr field, int n);  // the zero subspace

  static Subspace span(FieldPtr field, int n, const std::vector<Point>& generators);
  /// {x : x_1 + ... + x_n = 0}
  static Subspace zero_sum(FieldPtr field, int n);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int q() const { return field_->q(); }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const Matrix& basis() const { return basis_; }
  std::vector<int> pivots() const;

  /// q^dim, saturating at UINT64_MAX.
  std::uint64_t point_count() const;
  bool contains(const Point& x) const;
  /// All points, sorted lexicographically by encoded coordinates. Throws
  /// TooLarge when q^dim exceeds `cap`.
  std::vector<Point> enumerate_points(std::uint64_t cap = std::uint64_t{1} << 20) const;

  std::string to_text() const;
  std::string to_json() const;
  std::string describe() const;  // compact one-line form, e.g. <110,101>/GF(4)

  bool operator==(const Subspace& o) const { return q() == o.q() && n_ == o.n_ && basis_ == o.basis_; }
  bool operator<(const Subspace& o) const;

 private:
  FieldPtr field_;
  int n_;
  Matrix basis_;
};

/// Parses either the text format (`q n` then one generator per line) or the
/// JSON object {"q":..,"n":..,"generators":[[..],..]}.
Subspace parse_subspace(const std::string& input);

Subspace product(const Subspace& a, const Subspace& b);

/// Drops the coordinates in `dropped` (0-based).
Subspace project(const Subspace& s, const std::vector<int>& dropped);

/// An explicit point set inside U_1 x ... x U_m. Produced by restrict; also
/// the general input to mult. `coords` names the surviving coordinates of the
/// originating space (0-based).
struct SetSystem {
  int q = 0;
  std::vector<std::vector<Element>> box;
  std::vector<int> coords;
  std::vector<Point> points;

  int arity() const { return static_cast<int>(box.size()); }
};

SetSystem as_set_system(const Subspace& s);

/// S intersected with U_1 x ... x U_n, with coordinates on which all
/// surviving points agree dropped. An empty intersection yields the empty
/// point list on the full box.
SetSystem restrict_to(const Subspace& s, const std::vector<std::vector<Element>>& boxes);

/// One basis vector per dimension-1 factor, pairwise disjoint supports, or
/// nullopt. Uses the fact that such a basis exists iff the RREF rows already
/// have pairwise disjoint supports.
std::optional<std::vector<Point>> disjoint_support_basis(const Subspace& s);

struct SunflowerWitness {
  std::vector<int> permutation;   // coordinate order: head block, then tails
  std::vector<int> block_sizes;   // d_0, d_1, ..., d_r
  Matrix rows;                    // r rows in original coordinates
  int t() const { return static_cast<int>(rows.size()) + 1; }
};

/// Present iff Matroid(S) is the cycle matroid of a subdivision of A_t,
/// t >= 3. Requires a connected matroid without coloops (NotConnectedComponent).
std::optional<SunflowerWitness> sunflower_basis(const Subspace& s);

/// Checks that `w` has the sunflower shape and spans `s`.
bool check_sunflower(const Subspace& s, const SunflowerWitness& w);

struct Factor {
  std::vector<int> coords;  // sorted, 0-based
  Subspace space;
};

/// Finest coordinate partition with S equal to the product of the factors.
/// Coloops come out as singleton zero factors.
std::vector<Factor> factor(const Subspace& s);

/// Reassembles factors into a subspace of GF(q)^n (inverse of factor).
Subspace assemble(const FieldPtr& field, int n, const std::vector<Factor>& factors);

}  // namespace clutterforge
