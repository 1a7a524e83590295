#pragma once

#include <cstdint>
#include <cstddef>

namespace clutterforge {

/// Caps on the exhaustive searches. `search_nodes` bounds the number of
/// candidate nodes any single search may visit before reporting
/// BudgetExceeded; the other fields bound instance sizes.
struct Budget {
  std::uint64_t search_nodes = 200'000'000;
  std::size_t vertex_enum_ground = 14;
  std::size_t isomorphism_ground = 20;
  std::size_t matroid_minor_ground = 16;
  std::size_t graph_minor_edges = 14;
  std::uint64_t max_points = std::uint64_t{1} << 20;
};

/// Defaults, with `search_nodes` overridden by the CLUTTERFORGE_BUDGET
/// environment variable when it holds a positive integer.
Budget default_budget();

}  // namespace clutterforge
