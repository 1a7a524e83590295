#include "graphs.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "error.hpp"

namespace clutterforge {

MultiGraph parse_graph(const std::string& text) {
  MultiGraph g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<long long> vals;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v < 0 || v > 1'000'000)
        fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad vertex `" + tok + "`");
      vals.push_back(v);
    }
    if (vals.empty()) continue;
    if (vals.size() != 2) fail(Errc::ParseError, "line " + std::to_string(line_no) + ": expected `u v`");
    g.edges.emplace_back(static_cast<int>(vals[0]), static_cast<int>(vals[1]));
    g.vertices = std::max<int>(g.vertices, static_cast<int>(std::max(vals[0], vals[1])) + 1);
  }
  return g;
}

std::string to_text(const MultiGraph& g) {
  std::ostringstream out;
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

MultiGraph graph_At(int t) {
  MultiGraph g{2, {}};
  for (int i = 0; i < t; ++i) g.edges.emplace_back(0, 1);
  return g;
}

MultiGraph graph_cycle(int n) {
  MultiGraph g{n, {}};
  if (n == 1) g.edges.emplace_back(0, 0);
  else if (n == 2) g.edges = {{0, 1}, {0, 1}};
  else
    for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

MultiGraph graph_path(int edges) {
  MultiGraph g{edges + 1, {}};
  for (int i = 0; i < edges; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

MultiGraph graph_K4() { return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }

MultiGraph graph_K4e() { return {3, {{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}}}; }

bool is_connected(const MultiGraph& g) {
  if (g.vertices == 0) return true;
  std::vector<int> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [u, v] : g.edges) parent[find(u)] = find(v);
  for (int v = 1; v < g.vertices; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

std::vector<std::vector<int>> blocks(const MultiGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertices);  // (edge, other end)
  std::vector<std::vector<int>> out;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices) fail(Errc::BadIndex, "edge endpoint out of range");
    if (u == v) {
      out.push_back({e});
      continue;
    }
    adj[u].emplace_back(e, v);
    adj[v].emplace_back(e, u);
  }
  std::vector<int> disc(g.vertices, 0), low(g.vertices, 0);
  std::vector<int> stack;
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
    disc[u] = low[u] = ++timer;
    for (auto [e, w] : adj[u]) {
      if (e == parent_edge) continue;
      if (!disc[w]) {
        stack.push_back(e);
        dfs(w, e);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          std::vector<int> block;
          while (true) {
            const int top = stack.back();
            stack.pop_back();
            block.push_back(top);
            if (top == e) break;
          }
          std::sort(block.begin(), block.end());
          out.push_back(block);
        }
      } else if (disc[w] < disc[u]) {
        stack.push_back(e);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  for (int v = 0; v < g.vertices; ++v)
    if (!disc[v]) dfs(v, -1);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> is_subdivision_of_At(const MultiGraph& g) {
  std::vector<int> deg(g.vertices, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertices);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    auto [u, v] = g.edges[e];
    if (u == v) return std::nullopt;
    ++deg[u];
    ++deg[v];
    adj[u].emplace_back(e, v);
    adj[v].emplace_back(e, u);
  }
  std::vector<int> branch;
  for (int v = 0; v < g.vertices; ++v) {
    if (deg[v] >= 3) branch.push_back(v);
    else if (deg[v] == 1) return std::nullopt;
  }
  if (branch.size() != 2 || deg[branch[0]] != deg[branch[1]]) return std::nullopt;
  const int u = branch[0], target = branch[1];
  // every path leaving u through degree-2 vertices must end at the other branch vertex
  std::vector<bool> seen_edge(g.edges.size(), false);
  int paths = 0;
  for (auto [e0, w0] : adj[u]) {
    if (seen_edge[e0]) continue;
    int e = e0, w = w0;
    seen_edge[e] = true;
    while (w != u && w != target) {
      auto next = adj[w][0].first == e ? adj[w][1] : adj[w][0];
      e = next.first;
      w = next.second;
      if (seen_edge[e]) return std::nullopt;
      seen_edge[e] = true;
    }
    if (w != target) return std::nullopt;
    ++paths;
  }
  if (std::find(seen_edge.begin(), seen_edge.end(), false) != seen_edge.end()) return std::nullopt;
  return paths;
}

const char* graph_block_shape_name(GraphBlockShape s) {
  switch (s) {
    case GraphBlockShape::Bridge: return "bridge";
    case GraphBlockShape::Circuit: return "circuit";
    case GraphBlockShape::SubdividedAt: return "subdivision-of-A_t";
    case GraphBlockShape::Other: return "other";
  }
  return "?";
}

GraphBlockShape block_shape(const MultiGraph& g, const std::vector<int>& edges) {
  if (edges.size() == 1) {
    auto [u, v] = g.edges[edges.front()];
    return u == v ? GraphBlockShape::Circuit : GraphBlockShape::Bridge;
  }
  std::map<int, int> relabel;
  MultiGraph sub;
  for (int e : edges) {
    auto [u, v] = g.edges[e];
    for (int x : {u, v})
      if (!relabel.count(x)) relabel[x] = static_cast<int>(relabel.size());
    sub.edges.emplace_back(relabel[u], relabel[v]);
  }
  sub.vertices = static_cast<int>(relabel.size());
  if (sub.edges.size() == relabel.size()) return GraphBlockShape::Circuit;
  return is_subdivision_of_At(sub) ? GraphBlockShape::SubdividedAt : GraphBlockShape::Other;
}

bool blocks_allowed(const MultiGraph& g) {
  for (const auto& b : blocks(g))
    if (block_shape(g, b) == GraphBlockShape::Other) return false;
  return true;
}

bool has_K4e_graph_minor(const MultiGraph& g, const Budget& budget) {
  const int m = static_cast<int>(g.edges.size());
  if (m > static_cast<int>(budget.graph_minor_edges))
    fail(Errc::BudgetExceeded, "graph minor search limited to " + std::to_string(budget.graph_minor_edges) + " edges");
  if (m < 5) return false;
  std::vector<int> parent(g.vertices);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const unsigned full = (1u << m) - 1;
  for (unsigned kept = 0; kept <= full; ++kept) {
    if (std::popcount(kept) != 5) continue;
    const unsigned rest = full & ~kept;
    // contract any subset of the remaining edges, delete the others
    for (unsigned con = rest;; con = (con - 1) & rest) {
      std::iota(parent.begin(), parent.end(), 0);
      for (int e = 0; e < m; ++e)
        if (con >> e & 1) parent[find(g.edges[e].first)] = find(g.edges[e].second);
      std::map<std::pair<int, int>, int> mult;
      std::set<int> verts;
      bool loop = false;
      for (int e = 0; e < m && !loop; ++e) {
        if (!(kept >> e & 1)) continue;
        int a = find(g.edges[e].first), b = find(g.edges[e].second);
        if (a == b) loop = true;
        if (a > b) std::swap(a, b);
        ++mult[{a, b}];
        verts.insert(a);
        verts.insert(b);
      }
      if (!loop && verts.size() == 3 && mult.size() == 3) {
        std::vector<int> counts;
        for (auto& [k, c] : mult) counts.push_back(c);
        std::sort(counts.begin(), counts.end());
        if (counts == std::vector<int>{1, 2, 2}) return true;
      }
      if (con == 0) break;
    }
  }
  return false;
}

MultiGraph canonical_form(const MultiGraph& g) {
  const int n = g.vertices;
  std::vector<int> deg(n, 0), loops(n, 0);
  for (auto [u, v] : g.edges) {
    ++deg[u];
    ++deg[v];
    if (u == v) ++loops[u];
  }
  std::vector<std::vector<int>> nbr(n);
  for (auto [u, v] : g.edges) {
    nbr[u].push_back(deg[v]);
    if (u != v) nbr[v].push_back(deg[u]);
  }
  for (auto& x : nbr) std::sort(x.begin(), x.end());
  using Sig = std::tuple<int, int, std::vector<int>>;
  std::vector<Sig> sig(n);
  for (int v = 0; v < n; ++v) sig[v] = {deg[v], loops[v], nbr[v]};
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
  std::vector<std::pair<int, int>> classes;  // [begin, end) in order
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && sig[order[j]] == sig[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::vector<std::pair<int, int>> best;
  bool have = false;
  std::vector<int> label(n);
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      for (int i = 0; i < n; ++i) label[order[i]] = i;
      std::vector<std::pair<int, int>> edges;
      for (auto [u, v] : g.edges) edges.emplace_back(std::min(label[u], label[v]), std::max(label[u], label[v]));
      std::sort(edges.begin(), edges.end());
      if (!have || edges < best) {
        best = edges;
        have = true;
      }
      return;
    }
    auto [b, e] = classes[c];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      rec(c + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  rec(0);
  return {n, best};
}

std::vector<MultiGraph> connected_multigraphs(int max_edges) {
  std::vector<MultiGraph> out;
  std::vector<MultiGraph> level{MultiGraph{1, {}}};
  out.push_back(level.front());
  for (int k = 1; k <= max_edges; ++k) {
    std::set<std::vector<std::pair<int, int>>> seen_edges;
    std::vector<MultiGraph> next;
    auto add = [&](MultiGraph h) {
      auto c = canonical_form(h);
      if (seen_edges.insert(c.edges).second) next.push_back(std::move(c));
    };
    for (const auto& g : level) {
      for (int u = 0; u < g.vertices; ++u) {
        for (int v = u; v < g.vertices; ++v) {
          MultiGraph h = g;
          h.edges.emplace_back(u, v);
          add(h);
        }
        MultiGraph h = g;
        h.edges.emplace_back(u, g.vertices);
        ++h.vertices;
        add(h);
      }
    }
    // graphs with equal edge lists but different vertex counts cannot
    // arise: every vertex of a connected graph with edges is covered
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace clutterforge
