#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"

namespace clutterforge {

/// Undirected multigraph on vertices 0..vertices-1; loops and parallel
/// edges allowed. Edges are labeled by their index.
struct MultiGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  bool operator==(const MultiGraph&) const = default;
};

MultiGraph parse_graph(const std::string& text);  // one `u v` per line
std::string to_text(const MultiGraph& g);

MultiGraph graph_At(int t);
MultiGraph graph_cycle(int n);
MultiGraph graph_path(int edges);
MultiGraph graph_K4();
MultiGraph graph_K4e();

bool is_connected(const MultiGraph& g);

/// Edge sets of the blocks; bridges and loops are blocks of their own.
std::vector<std::vector<int>> blocks(const MultiGraph& g);

/// t when g consists of t >= 3 internally disjoint paths between two vertices.
std::optional<int> is_subdivision_of_At(const MultiGraph& g);

enum class GraphBlockShape { Bridge, Circuit, SubdividedAt, Other };
const char* graph_block_shape_name(GraphBlockShape s);

/// Shape of the subgraph formed by `edges` (expected to be one block).
GraphBlockShape block_shape(const MultiGraph& g, const std::vector<int>& edges);

/// Every block is a bridge, a circuit or a subdivision of some A_t.
bool blocks_allowed(const MultiGraph& g);

/// Exhaustive delete/contract search for K4/e. Throws BudgetExceeded when g
/// has more edges than the budget allows.
bool has_K4e_graph_minor(const MultiGraph& g, const Budget& budget = default_budget());

/// Connected multigraphs (loops and parallel edges allowed, no isolated
/// vertices except the single-vertex graph) with at most `max_edges`
/// edges, one per isomorphism class.
std::vector<MultiGraph> connected_multigraphs(int max_edges);

/// Canonical relabeling: minimal sorted edge list over degree-respecting
/// vertex permutations.
MultiGraph canonical_form(const MultiGraph& g);

}  // namespace clutterforge
