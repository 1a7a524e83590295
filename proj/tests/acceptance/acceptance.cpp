// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clutter.hpp"
#include "error.hpp"
#include "graphs.hpp"
#include "matroid.hpp"
#include "oracles.hpp"
#include "polyhedral.hpp"
#include "verify.hpp"
#include "vspace.hpp"

using namespace clutterforge;

namespace {

struct Criterion {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 8) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

int failed_criteria = 0;

void run(int id, const std::string& title, double time_limit, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && secs >= time_limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "took %.2f s, limit %.0f s", secs, time_limit);
    c.failures.push_back(buf);
  }
  const bool ok = c.failures.empty();
  failed_criteria += !ok;
  std::string detail;
  for (const auto& n : c.notes) detail += (detail.empty() ? "" : "; ") + n;
  std::printf("%s criterion %2d: %s [%.2f s]%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
}

Subspace space(int q, int n, const std::vector<Point>& rows) { return Subspace::span(Field::get(q), n, rows); }

RationalVector halves(int n) { return RationalVector(n, Rational(1, 2)); }

bool integral(const RationalVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& r) { return denominator(r) == 1; });
}

std::vector<RationalVector> fractional_points(const std::vector<RationalVector>& pts) {
  std::vector<RationalVector> out;
  for (const auto& x : pts)
    if (!integral(x)) out.push_back(x);
  return out;
}

std::vector<long long> as_ll(const WeightVector& w) { return {w.begin(), w.end()}; }

std::vector<long long> unit(const Clutter& c) { return std::vector<long long>(c.size(), 1); }

// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
  for (auto [b, n] : {std::pair{Builtin::Delta3, 3}, std::pair{Builtin::C5sq, 5}}) {
    const Clutter cl = builtin(b);
    const auto frac = fractional_points(extreme_points(cl));
    c.expect(frac == std::vector<RationalVector>{halves(n)},
             std::string(builtin_name(b)) + ": fractional extreme points are not exactly the all-1/2 vector");
    const auto brute = fractional_points(oracle::vertices_by_bases(cl));
    c.expect(brute == frac, std::string(builtin_name(b)) + ": basis enumeration disagrees");
    c.expect(!is_ideal(cl).integral, std::string(builtin_name(b)) + " reported ideal");
  }
  c.note("Delta3 and C5sq each have the single fractional extreme point (1/2,...,1/2)");
}

void criterion2(Criterion& c) {
  const Clutter q6 = builtin(Builtin::Q6);
  const auto cert = is_ideal(q6);
  c.expect(cert.integral, "Q6 not ideal");
  c.expect(fractional_points(oracle::vertices_by_bases(q6)).empty(), "basis enumeration finds a fractional point of Q6");
  const Weight t = tau(q6, unit_weights(q6)), v = nu(q6, unit_weights(q6));
  c.expect(t == 2 && oracle::brute_tau(q6, unit(q6)) == 2, "tau(Q6,1) != 2");
  c.expect(v == 1 && oracle::brute_nu(q6, unit(q6)) == 1, "nu(Q6,1) != 1");
  c.expect(!packs(q6), "Q6 packs");
  c.note("Q6 ideal, tau=2, nu=1, does not pack");
}

void criterion3(Criterion& c) {
  const Subspace s = space(4, 3, {{1, 1, 0}, {1, 0, 1}});
  const Field& f = s.field();
  // the 16 points as printed, GF(4) = {0,1,a,b}
  const std::vector<std::string> listed = {"000", "110", "aa0", "bb0", "101", "011", "ba1", "ab1",
                                           "a0a", "b1a", "0aa", "1ba", "b0b", "a1b", "1ab", "0bb"};
  std::set<std::string> from_space;
  for (const auto& p : s.enumerate_points()) {
    std::string w;
    for (Element e : p) w += f.symbol(e);
    from_space.insert(w);
  }
  c.expect(from_space == std::set<std::string>(listed.begin(), listed.end()), "points of S differ from the listed 16");

  const Clutter cl = mult(s);
  c.expect(cl.size() == 12 && cl.members().size() == 16, "mult(S) is not 16 members on 12 elements");
  std::set<std::string> members;
  for (Mask m : cl.members()) {
    std::string w(3, '?');
    for (int e : mask_elements(m)) w[cl.ground()[e].part] = f.symbol(static_cast<Element>(cl.ground()[e].value))[0];
    members.insert(w);
  }
  c.expect(members == std::set<std::string>(listed.begin(), listed.end()), "members of mult(S) differ from the listed points");

  const auto cert = is_ideal(cl);
  c.expect(cert.integral, "mult(S) not ideal");

  // R_{1,1}: keep the values {0,1} in every part
  Mask del = 0;
  for (int e = 0; e < cl.size(); ++e)
    if (cl.ground()[e].value > 1) del |= bit(e);
  const Clutter restricted = minor(cl, {del, 0});
  c.expect(is_isomorphic(builtin(Builtin::Q6), restricted).has_value(), "restriction to {0,1}^3 is not Q6");
  const auto w = find_minor(cl, builtin(Builtin::Q6));
  c.expect(w && check_minor_witness(cl, builtin(Builtin::Q6), *w), "find_minor does not locate Q6");

  const auto viol = mfmc_check(cl, 1, false);
  c.expect(viol.has_value(), "refuter finds no 0/1 violation");
  if (viol) {
    c.expect(std::all_of(viol->w.begin(), viol->w.end(), [](Weight x) { return x == 0 || x == 1; }), "violation not 0/1");
    c.expect(oracle::brute_tau(cl, as_ll(viol->w)) == viol->tau && oracle::brute_nu(cl, as_ll(viol->w)) == viol->nu &&
                 viol->tau > viol->nu,
             "violation does not survive brute-force tau/nu");
  }
  c.note("16/16 points match, ideal with " + std::to_string(cert.extreme_point_count) +
         " extreme points, Q6 via R11 restriction, 0/1 MFMC violation" +
         (viol ? " tau=" + std::to_string(viol->tau) + " nu=" + std::to_string(viol->nu) : std::string()));
}

std::string sweep_note(const SweepResult& r) { return sweep_summary_line(r.summary); }

void expect_full_agreement(Criterion& c, const SweepResult& r, std::size_t expected, const std::string& tag) {
  c.expect(r.summary.total == expected, tag + ": " + std::to_string(r.summary.total) + " subspaces, expected " + std::to_string(expected));
  c.expect(r.summary.disagree == 0, tag + ": disagreements");
  c.expect(r.summary.unknown == 0, tag + ": unknown verdicts");
  c.expect(r.summary.agree == expected, tag + ": not every row agrees");
}

void criterion4(Criterion& c) {
  const std::size_t count = oracle::all_subspaces(*Field::get(3), 4).size();
  c.expect(count == 212, "oracle count of GF(3)^4 subspaces is " + std::to_string(count));
  const auto r = sweep(3, 4, Theorem::OddField);
  expect_full_agreement(c, r, 212, "GF(3)^4");
  c.note(sweep_note(r));
}

void criterion5(Criterion& c) {
  const std::size_t count = oracle::all_subspaces(*Field::get(4), 3).size();
  c.expect(count == 44, "oracle count of GF(4)^3 subspaces is " + std::to_string(count));
  const auto r = sweep(4, 3, Theorem::Field4);
  expect_full_agreement(c, r, 44, "GF(4)^3");
  const Subspace zs = Subspace::zero_sum(Field::get(4), 3);
  bool seen = false;
  for (const auto& rep : r.reports)
    if (rep.space == Json::parse(zs.to_json())) {
      seen = true;
      c.expect(rep.i.verdict == Verdict::True, "{sum x = 0} not reported ideal");
    }
  c.expect(seen, "{sum x = 0} missing from the sweep");
  c.note(sweep_note(r) + ", {sum x=0} ideal");
}

void criterion6(Criterion& c) {
  std::string notes;
  for (int q : {2, 3}) {
    const std::size_t count = oracle::all_subspaces(*Field::get(q), 3).size();
    const auto r = sweep(q, 3, Theorem::Mfmc);
    expect_full_agreement(c, r, count, "GF(" + std::to_string(q) + ")^3");
    notes += (notes.empty() ? "" : ", ") + std::string("GF(") + std::to_string(q) + ")^3 " + sweep_note(r);
  }
  c.note(notes);
}

// Rows equal up to a permutation of rows and columns.
bool same_up_to_permutation(const std::vector<std::vector<int>>& a, std::vector<std::vector<int>> b) {
  if (a.size() != b.size() || a.empty() || a[0].size() != b[0].size()) return false;
  const std::size_t cols = a[0].size();
  std::vector<int> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  std::multiset<std::vector<int>> target(a.begin(), a.end());
  do {
    std::multiset<std::vector<int>> permuted;
    for (const auto& row : b) {
      std::vector<int> r(cols);
      for (std::size_t k = 0; k < cols; ++k) r[k] = row[perm[k]];
      permuted.insert(r);
    }
    if (permuted == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

void criterion7(Criterion& c) {
  const Subspace s = Subspace::zero_sum(Field::get(8), 3);
  const std::vector<std::vector<int>> shown = {{1, 1, 0, 0, 0, 0, 0},
                                               {0, 1, 1, 0, 0, 0, 0},
                                               {0, 0, 1, 1, 0, 0, 0},
                                               {0, 0, 0, 1, 1, 0, 1},
                                               {1, 0, 0, 0, 1, 1, 0}};
  const Clutter host = mult(s);
  std::set<Point> alphas;
  for (int x = 0; x < 512; ++x) {
    const Point a = {static_cast<Element>(x >> 6), static_cast<Element>((x >> 3) & 7), static_cast<Element>(x & 7)};
    if (!s.contains(a)) alphas.insert(a);
  }
  std::size_t done = 0;
  for (const auto& a : alphas) {
    const auto w = c5sq_witness(s, {a, std::nullopt});
    const Clutter replayed = replay(host, w.steps);
    c.expect(is_isomorphic(builtin(Builtin::C5sq), replayed).has_value(), "replay is not C5sq");
    const auto display = w.choices["display"].get<std::vector<std::vector<int>>>();
    c.expect(same_up_to_permutation(shown, display), "display differs from the 5x7 matrix");
    ++done;
  }
  c.expect(done >= 10, "fewer than 10 alphas");
  c.note(std::to_string(done) + " distinct alpha outside S, every replay isomorphic to C5sq, display matches");
}

void criterion8(Criterion& c) {
  std::mt19937_64 rng(20240601);
  std::string notes;
  for (int q : {4, 8})
    for (int n : {3, 4}) {
      const auto f = Field::get(q);
      const Subspace s = Subspace::zero_sum(f, n);
      std::uniform_int_distribution<int> pick(0, q - 1);
      int checked = 0;
      while (checked < 25) {
        Point alpha(n);
        for (auto& x : alpha) x = static_cast<Element>(pick(rng));
        Element sigma = 0;
        for (Element x : alpha) sigma = f->add(sigma, x);
        if (!sigma) continue;
        ++checked;
        const std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n);

        const Clutter loc = localization(s, alpha);
        std::set<GroundElement> singles;
        std::map<GroundElement, std::set<GroundElement>> adj;
        for (Mask m : loc.members()) {
          const auto es = mask_elements(m);
          if (es.size() == 1) singles.insert(loc.ground()[es[0]]);
          if (es.size() == 2) {
            adj[loc.ground()[es[0]]].insert(loc.ground()[es[1]]);
            adj[loc.ground()[es[1]]].insert(loc.ground()[es[0]]);
          }
        }
        std::set<GroundElement> expected_singles;
        for (int i = 0; i < n; ++i) expected_singles.insert({i, f->add(alpha[i], sigma)});
        c.expect(singles == expected_singles, tag + ": size-1 members are not {alpha_i + sigma}");

        // components of the size-2 graph
        std::set<GroundElement> seen;
        int components = 0;
        for (const auto& [v0, _] : adj) {
          if (seen.count(v0)) continue;
          ++components;
          std::map<GroundElement, int> side{{v0, 0}};
          std::vector<GroundElement> stack{v0};
          seen.insert(v0);
          bool bipartite = true;
          std::size_t edges = 0;
          while (!stack.empty()) {
            const GroundElement v = stack.back();
            stack.pop_back();
            for (const auto& u : adj[v]) {
              ++edges;
              if (!side.count(u)) {
                side[u] = 1 - side[v];
                seen.insert(u);
                stack.push_back(u);
              } else if (side[u] == side[v]) {
                bipartite = false;
              }
            }
          }
          edges /= 2;
          c.expect(bipartite, tag + ": component not bipartite");
          c.expect(side.size() == static_cast<std::size_t>(2 * n), tag + ": component does not have 2n vertices");
          c.expect(edges == static_cast<std::size_t>(n * (n - 1)), tag + ": component is not K_{n,n} minus a matching");
          // one vertex per part on each side, the two differing by sigma
          std::vector<std::vector<Element>> by_side(2, std::vector<Element>(n, 0));
          std::vector<std::vector<int>> hits(2, std::vector<int>(n, 0));
          for (const auto& [v, sd] : side) {
            ++hits[sd][v.part];
            by_side[sd][v.part] = static_cast<Element>(v.value);
          }
          bool shape = true;
          for (int sd = 0; sd < 2; ++sd)
            for (int i = 0; i < n; ++i) shape = shape && hits[sd][i] == 1;
          c.expect(shape, tag + ": sides do not hold one vertex per part");
          if (!shape) continue;
          for (const auto& [v, sd] : side)
            for (const auto& u : adj[v]) c.expect(u.part != v.part, tag + ": edge inside a part");
          const auto& beta = by_side[0];
          for (int i = 0; i < n; ++i) {
            c.expect(by_side[1][i] == f->add(beta[i], sigma), tag + ": sides do not differ by sigma");
            c.expect(beta[i] == f->add(f->add(beta[0], alpha[0]), alpha[i]), tag + ": beta_i != beta_1 + alpha_1 + alpha_i");
          }
        }
        c.expect(components == q / 2 - 1, tag + ": " + std::to_string(components) + " components, expected q/2-1");

        // the library's own profile agrees
        const auto prof = localization_profile(s, alpha);
        c.expect(static_cast<int>(prof.components.size()) == q / 2 - 1 && prof.singletons.size() == static_cast<std::size_t>(n),
                 tag + ": localization_profile disagrees");
      }
      notes += (notes.empty() ? "" : ", ") + std::to_string(q) + "/" + std::to_string(n);
    }
  c.note("25 alphas with sigma != 0 for each (q/n) in " + notes);
}

// Independent recognition of "every block is a bridge, circuit or subdivided
// A_t": blocks from common cycles, shapes from degrees.
bool blocks_allowed_oracle(const MultiGraph& g) {
  const int m = static_cast<int>(g.edges.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<bool> on_cycle(m, false);
  for (Mask sub = 1; sub < bit(m); ++sub) {
    std::map<int, int> deg;
    for (int e = 0; e < m; ++e)
      if (sub >> e & 1) {
        deg[g.edges[e].first]++;
        deg[g.edges[e].second]++;
      }
    if (!std::all_of(deg.begin(), deg.end(), [](auto& kv) { return kv.second == 2; })) continue;
    // connected?
    std::set<int> reach{deg.begin()->first};
    for (bool grew = true; grew;) {
      grew = false;
      for (int e = 0; e < m; ++e)
        if ((sub >> e & 1) && (reach.count(g.edges[e].first) != reach.count(g.edges[e].second))) {
          reach.insert(g.edges[e].first);
          reach.insert(g.edges[e].second);
          grew = true;
        }
    }
    if (reach.size() != deg.size()) continue;
    int first = -1;
    for (int e = 0; e < m; ++e)
      if (sub >> e & 1) {
        on_cycle[e] = true;
        if (first < 0) first = e;
        parent[find(e)] = find(first);
      }
  }
  std::map<int, std::vector<int>> blocks;
  for (int e = 0; e < m; ++e)
    if (on_cycle[e]) blocks[find(e)].push_back(e);
  for (const auto& [_, es] : blocks) {
    std::map<int, int> deg;
    for (int e : es) {
      deg[g.edges[e].first]++;
      deg[g.edges[e].second]++;
    }
    int branch = 0, branch_degree = -1;
    bool ok = true;
    for (const auto& [v, d] : deg) {
      if (d == 2) continue;
      ++branch;
      if (branch_degree >= 0 && d != branch_degree) ok = false;
      branch_degree = d;
    }
    if (!ok || !(branch == 0 || branch == 2)) return false;
  }
  return true;
}

void criterion9(Criterion& c) {
  const auto all = connected_multigraphs(7);
  std::vector<int> by_edges(8, 0);
  int with_minor = 0;
  for (const auto& g : all) {
    ++by_edges[g.edges.size()];
    const bool minor = has_K4e_graph_minor(g);
    with_minor += minor;
    c.expect(minor == !blocks_allowed(g), "exception: " + to_text(g));
    c.expect(blocks_allowed(g) == blocks_allowed_oracle(g), "block shapes disagree with the oracle: " + to_text(g));
  }
  c.expect(by_edges == std::vector<int>{1, 2, 4, 11, 30, 95, 328, 1211}, "graph counts differ from the published sequence");
  c.note(std::to_string(all.size()) + " connected multigraphs, " + std::to_string(with_minor) + " with a K4/e minor, 0 exceptions");
}

CircuitMatroid subspace_minor(const Subspace& s, Mask del, Mask con) {
  std::vector<Point> kept;
  for (const auto& p : s.enumerate_points())
    if (!(support_mask(p) & del)) kept.push_back(p);
  const auto restricted = Subspace::span(s.field_ptr(), s.n(), kept);
  std::vector<int> drop;
  for (int i = 0; i < s.n(); ++i)
    if ((del | con) & bit(i)) drop.push_back(i);
  if (static_cast<int>(drop.size()) == s.n()) return CircuitMatroid(0, {});
  return matroid_of(project(restricted, drop));
}

void criterion10(Criterion& c) {
  const auto f = Field::get(3);
  std::size_t spaces = 0, pairs = 0;
  for (const auto& pts : oracle::all_subspaces(*f, 3)) {
    const auto s = Subspace::span(f, 3, pts);
    const auto m = matroid_of(s);
    ++spaces;
    for (int code = 0; code < 27; ++code) {
      Mask del = 0, con = 0;
      for (int i = 0, x = code; i < 3; ++i, x /= 3) {
        if (x % 3 == 1) del |= bit(i);
        if (x % 3 == 2) con |= bit(i);
      }
      ++pairs;
      c.expect(m.minor(del, con) == subspace_minor(s, del, con), "minor mismatch on " + s.describe());
    }
  }
  c.note(std::to_string(spaces) + " subspaces x 27 disjoint (I,J) = " + std::to_string(pairs) + " equal minors");
}

void criterion11(Criterion& c) {
  const auto f = Field::get(3);
  std::size_t spaces = 0, with_a3 = 0;
  for (const auto& pts : oracle::all_subspaces(*f, 4)) {
    const auto m = matroid_of(Subspace::span(f, 4, pts));
    const auto circuits = oracle::circuits(pts);
    bool meet = false;
    for (std::size_t a = 0; a < circuits.size(); ++a)
      for (std::size_t b = a + 1; b < circuits.size(); ++b) meet = meet || (circuits[a] & circuits[b]);
    const auto found = has_minor(m, MatroidTarget::A3);
    c.expect(found.has_value() == meet, "A3 minor vs intersecting circuits on " + Subspace::span(f, 4, pts).describe());
    if (found)
      c.expect(matroid_isomorphism(target_matroid(MatroidTarget::A3), m.minor(found->deleted, found->contracted)).has_value(),
               "reported A3 minor is not A3");
    ++spaces;
    with_a3 += found.has_value();
  }
  c.note(std::to_string(spaces) + " matroids, " + std::to_string(with_a3) + " with an A3 minor, all matching");
}

void criterion12(Criterion& c) {
  const Subspace r11 = space(2, 3, {{0, 1, 1}, {1, 0, 1}});
  const auto rep = replication_tau2_report(r11);
  c.expect(rep.ideal == std::optional<bool>(true), "R11 not ideal");
  c.expect(rep.minimally_nonpacking, "R11 not minimally non-packing");
  c.expect(rep.tau == std::optional<Weight>(2), "tau != 2");
  c.expect(rep.isomorphic_to_q6 == std::optional<bool>(true), "not isomorphic to Q6");

  // minimal non-packing by brute force: C does not pack, every single-element minor does
  const Clutter cl = mult(r11);
  c.expect(oracle::brute_tau(cl, unit(cl)) == 2 && oracle::brute_nu(cl, unit(cl)) == 1, "brute force: R11 packs");
  for (int e = 0; e < cl.size(); ++e)
    for (bool del : {true, false}) {
      const Clutter m = minor(cl, del ? MinorSpec{bit(e), 0} : MinorSpec{0, bit(e)});
      if (m.members().empty() || m.members()[0] == 0) continue;
      c.expect(oracle::brute_tau(m, unit(m)) == oracle::brute_nu(m, unit(m)), "brute force: a single-element minor does not pack");
    }

  const auto f = Field::get(3);
  std::size_t packing = 0, total = 0;
  for (const auto& s : enumerate_subspaces(3, 3)) {
    ++total;
    if (has_packing_property(mult(s))) continue;
    ++packing;
    c.expect(disjoint_support_basis(s).has_value(), "packing property without a disjoint-support basis: " + s.describe());
    const auto pts = s.enumerate_points();
    const auto circuits = oracle::circuits(pts);
    for (std::size_t a = 0; a < circuits.size(); ++a)
      for (std::size_t b = a + 1; b < circuits.size(); ++b)
        c.expect(!(circuits[a] & circuits[b]), "packing property but circuits meet: " + s.describe());
  }
  c.note("R11 ideal, minimally non-packing, tau=2, ~Q6; " + std::to_string(packing) + " of " + std::to_string(total) +
         " GF(3)^3 subspaces pack, all with a disjoint-support basis");
}

}  // namespace

int main() {
  run(1, "Delta3 and C5sq fractional extreme points", 1.0, criterion1);
  run(2, "Q6 ideal, tau=2, nu=1, does not pack", 1.0, criterion2);
  run(3, "<110,101> over GF(4): 16 members, ideal, Q6 minor, MFMC violation", 60.0, criterion3);
  run(4, "odd field, GF(3)^4: ideal = disjoint-support basis = no Delta3", 600.0, criterion4);
  run(5, "GF(4)^3: ideal = lines and sunflowers = no Delta3", 600.0, criterion5);
  run(6, "GF(2)^3 and GF(3)^3: MFMC = disjoint-support basis = no Delta3, Q6", 0, criterion6);
  run(7, "C5sq witnesses on {sum x = 0} in GF(8)^3", 10.0, criterion7);
  run(8, "localization structure for q in {4,8}, n in {3,4}", 0, criterion8);
  run(9, "K4/e-minor-free multigraphs with at most 7 edges", 30.0, criterion9);
  run(10, "matroid minors: circuit route equals subspace route over GF(3)^3", 0, criterion10);
  run(11, "A3 minor iff two circuits meet over GF(3)^4", 0, criterion11);
  run(12, "replication and tau=2 at desk scale", 0, criterion12);
  std::printf("%d of 12 criteria failed\n", failed_criteria);
  return failed_criteria ? 1 : 0;
}
