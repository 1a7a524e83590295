#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"

namespace clutterforge {

class Subspace;

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }
std::vector<int> mask_elements(Mask m);
Mask elements_mask(const std::vector<int>& elems);

/// A matroid on {0..n-1} given by its circuit family.
class CircuitMatroid {
 public:
  /// Circuits are minimalized and sorted. When `check_axioms` is set and
  /// n <= 16 the circuit elimination axiom is verified (VerificationFailed).
  CircuitMatroid(int n, std::vector<Mask> circuits, bool check_axioms = true);

  int size() const { return n_; }
  const std::vector<Mask>& circuits() const { return circuits_; }

  int rank() const;
  bool is_independent(Mask set) const;

  /// Delete I, contract J (both masks, disjoint); remaining elements are
  /// renumbered in increasing order.
  CircuitMatroid minor(Mask deleted, Mask contracted) const;

  /// Connected components; elements in no circuit are singleton components.
  std::vector<std::vector<int>> components() const;
  /// e ~ f iff every circuit contains both or neither, within components.
  std::vector<std::vector<int>> series_classes() const;

  std::string to_text() const;
  bool operator==(const CircuitMatroid& o) const { return n_ == o.n_ && circuits_ == o.circuits_; }

 private:
  int n_;
  std::vector<Mask> circuits_;
};

/// Circuits are the minimal nonempty supports of S; validates the rank
/// identity dim(S) + rank = n.
CircuitMatroid matroid_of(const Subspace& s);

CircuitMatroid parse_matroid(const std::string& text);

enum class BlockShape { Coloop, Circuit, SubdividedAt, Unclassified };
const char* block_shape_name(BlockShape s);

struct ComponentReport {
  std::vector<int> elements;
  BlockShape shape = BlockShape::Unclassified;
  int t = 0;  // for SubdividedAt
};

struct StructureReport {
  std::vector<ComponentReport> components;
  bool all_disjoint_circuits = false;
  bool all_structured = false;
};

StructureReport classify(const CircuitMatroid& m);

enum class MatroidTarget { U24, MK4e, A3, MK4 };
const char* matroid_target_name(MatroidTarget t);
CircuitMatroid target_matroid(MatroidTarget t);

struct MatroidMinor {
  Mask deleted = 0;
  Mask contracted = 0;
  std::vector<int> kept;  // kept[i] = element of M playing target element i
};

/// Exhaustive search for `target` as a minor (n <= 16). Throws
/// BudgetExceeded when the candidate count exceeds the budget.
std::optional<MatroidMinor> has_minor(const CircuitMatroid& m, MatroidTarget target,
                                      const Budget& budget = default_budget());

/// Isomorphism of two small matroids by permutation search; returns the
/// image of each element of `a` in `b`.
std::optional<std::vector<int>> matroid_isomorphism(const CircuitMatroid& a, const CircuitMatroid& b);

std::optional<std::pair<Mask, Mask>> intersecting_circuits(const CircuitMatroid& m);

}  // namespace clutterforge
