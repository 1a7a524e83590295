#include "matroid.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "vspace.hpp"

namespace clutterforge {

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Mask elements_mask(const std::vector<int>& elems) {
  Mask m = 0;
  for (int e : elems) m |= bit(e);
  return m;
}

namespace {

// Inclusion-minimal nonempty sets, sorted.
std::vector<Mask> minimal_nonempty(std::vector<Mask> sets) {
  std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<Mask> out;
  for (Mask s : sets) {
    if (s == 0) continue;
    bool dominated = false;
    for (Mask k : out) {
      if ((k & s) == k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Maps the bits of `m` that lie in `keep` onto consecutive positions.
Mask compress(Mask m, Mask keep) {
  Mask out = 0;
  int pos = 0;
  for (int e : mask_elements(keep)) {
    if (m & bit(e)) out |= bit(pos);
    ++pos;
  }
  return out;
}

}  // namespace

CircuitMatroid::CircuitMatroid(int n, std::vector<Mask> circuits, bool check_axioms) : n_(n) {
  if (n < 0 || n > 64) fail(Errc::DimensionMismatch, "matroid ground size must be in [0, 64]");
  const Mask ground = n == 64 ? ~Mask{0} : (bit(n) - 1);
  for (Mask c : circuits) {
    if (c == 0) fail(Errc::VerificationFailed, "empty circuit");
    if (c & ~ground) fail(Errc::BadIndex, "circuit element outside ground set");
  }
  circuits_ = minimal_nonempty(std::move(circuits));
  if (check_axioms && n <= 16) {
    for (std::size_t a = 0; a < circuits_.size(); ++a) {
      for (std::size_t b = a + 1; b < circuits_.size(); ++b) {
        const Mask common = circuits_[a] & circuits_[b];
        for (int e : mask_elements(common)) {
          const Mask rest = (circuits_[a] | circuits_[b]) & ~bit(e);
          const bool found = std::any_of(circuits_.begin(), circuits_.end(), [&](Mask c) { return (c & rest) == c; });
          if (!found) fail(Errc::VerificationFailed, "circuit elimination axiom fails");
        }
      }
    }
  }
}

bool CircuitMatroid::is_independent(Mask set) const {
  return std::none_of(circuits_.begin(), circuits_.end(), [&](Mask c) { return (c & set) == c; });
}

int CircuitMatroid::rank() const {
  Mask basis = 0;
  for (int e = 0; e < n_; ++e)
    if (is_independent(basis | bit(e))) basis |= bit(e);
  return std::popcount(basis);
}

CircuitMatroid CircuitMatroid::minor(Mask deleted, Mask contracted) const {
  if (deleted & contracted) fail(Errc::OverlapError, "delete and contract sets overlap");
  const Mask ground = n_ == 64 ? ~Mask{0} : (bit(n_) - 1);
  if ((deleted | contracted) & ~ground) fail(Errc::BadIndex, "minor set outside ground set");
  const Mask keep = ground & ~deleted & ~contracted;
  std::vector<Mask> next;
  for (Mask c : circuits_) {
    if (c & deleted) continue;
    const Mask rest = compress(c & ~contracted, keep);
    if (rest) next.push_back(rest);
  }
  return CircuitMatroid(std::popcount(keep), std::move(next), false);
}

std::vector<std::vector<int>> CircuitMatroid::components() const {
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Mask c : circuits_) {
    const auto el = mask_elements(c);
    for (std::size_t i = 1; i < el.size(); ++i) parent[find(el[i])] = find(el[0]);
  }
  std::map<int, std::vector<int>> groups;
  for (int e = 0; e < n_; ++e) groups[find(e)].push_back(e);
  std::vector<std::vector<int>> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> CircuitMatroid::series_classes() const {
  std::vector<std::vector<int>> out;
  for (const auto& comp : components()) {
    std::vector<bool> assigned(comp.size(), false);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (assigned[i]) continue;
      std::vector<int> cls{comp[i]};
      assigned[i] = true;
      for (std::size_t j = i + 1; j < comp.size(); ++j) {
        if (assigned[j]) continue;
        const bool together = std::all_of(circuits_.begin(), circuits_.end(), [&](Mask c) {
          return ((c >> comp[i]) & 1) == ((c >> comp[j]) & 1);
        });
        if (together) {
          cls.push_back(comp[j]);
          assigned[j] = true;
        }
      }
      out.push_back(cls);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string CircuitMatroid::to_text() const {
  std::ostringstream out;
  out << "elements:";
  for (int e = 0; e < n_; ++e) out << ' ' << e + 1;
  out << '\n';
  for (Mask c : circuits_) {
    bool first = true;
    for (int e : mask_elements(c)) {
      out << (first ? "" : " ") << e + 1;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

CircuitMatroid matroid_of(const Subspace& s) {
  std::vector<Mask> supports;
  for (const auto& p : s.enumerate_points()) {
    const Mask m = support_mask(p);
    if (m) supports.push_back(m);
  }
  CircuitMatroid m(s.n(), std::move(supports), s.n() <= 16);
  if (m.rank() + s.dim() != s.n()) fail(Errc::VerificationFailed, "rank identity dim(S) + rank = n fails");
  return m;
}

CircuitMatroid parse_matroid(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::map<std::string, int> index;
  std::vector<Mask> circuits;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.front() != "elements:") fail(Errc::ParseError, "line " + std::to_string(line_no) + ", column 1: expected `elements:` header");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (index.count(toks[i])) fail(Errc::ParseError, "line " + std::to_string(line_no) + ": duplicate element " + toks[i]);
        const int id = static_cast<int>(index.size());
        index[toks[i]] = id;
      }
      have_header = true;
      continue;
    }
    Mask c = 0;
    for (const auto& t : toks) {
      auto it = index.find(t);
      if (it == index.end()) fail(Errc::ParseError, "line " + std::to_string(line_no) + ": unknown element " + t);
      c |= bit(it->second);
    }
    circuits.push_back(c);
  }
  if (!have_header) fail(Errc::ParseError, "line 1, column 1: missing `elements:` header");
  return CircuitMatroid(static_cast<int>(index.size()), std::move(circuits));
}

const char* block_shape_name(BlockShape s) {
  switch (s) {
    case BlockShape::Coloop: return "coloop";
    case BlockShape::Circuit: return "circuit";
    case BlockShape::SubdividedAt: return "subdivision-of-A_t";
    case BlockShape::Unclassified: return "unclassified";
  }
  return "?";
}

StructureReport classify(const CircuitMatroid& m) {
  StructureReport rep;
  rep.all_disjoint_circuits = !intersecting_circuits(m).has_value();
  rep.all_structured = true;
  const auto classes = m.series_classes();
  for (const auto& comp : m.components()) {
    ComponentReport cr;
    cr.elements = comp;
    const Mask cm = elements_mask(comp);
    std::vector<Mask> inside;
    for (Mask c : m.circuits())
      if ((c & cm) == c) inside.push_back(c);
    if (inside.empty()) {
      cr.shape = BlockShape::Coloop;
    } else if (inside.size() == 1 && inside.front() == cm) {
      cr.shape = BlockShape::Circuit;
    } else {
      // contract all but one element of each series class in this component
      Mask contract = 0;
      int t = 0;
      for (const auto& cls : classes) {
        if (!(elements_mask(cls) & cm)) continue;
        ++t;
        for (std::size_t i = 1; i < cls.size(); ++i) contract |= bit(cls[i]);
      }
      const Mask ground = m.size() == 64 ? ~Mask{0} : (bit(m.size()) - 1);
      const CircuitMatroid reduced = m.minor(ground & ~cm, contract);
      const bool all_pairs = static_cast<int>(reduced.circuits().size()) == t * (t - 1) / 2 &&
                             std::all_of(reduced.circuits().begin(), reduced.circuits().end(),
                                         [](Mask c) { return std::popcount(c) == 2; });
      if (t >= 3 && all_pairs) {
        cr.shape = BlockShape::SubdividedAt;
        cr.t = t;
      } else {
        cr.shape = BlockShape::Unclassified;
        rep.all_structured = false;
      }
    }
    rep.components.push_back(cr);
  }
  return rep;
}

const char* matroid_target_name(MatroidTarget t) {
  switch (t) {
    case MatroidTarget::U24: return "U24";
    case MatroidTarget::MK4e: return "MK4e";
    case MatroidTarget::A3: return "A3";
    case MatroidTarget::MK4: return "MK4";
  }
  return "?";
}

CircuitMatroid target_matroid(MatroidTarget t) {
  auto m = [](std::initializer_list<std::initializer_list<int>> sets) {
    std::vector<Mask> out;
    for (auto s : sets) out.push_back(elements_mask(std::vector<int>(s)));
    return out;
  };
  switch (t) {
    case MatroidTarget::U24:
      return CircuitMatroid(4, m({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
    case MatroidTarget::A3:
      return CircuitMatroid(3, m({{0, 1}, {0, 2}, {1, 2}}));
    case MatroidTarget::MK4e:
      // edge 1 joins the two degree-3 vertices; 2,4 and 3,5 are parallel pairs
      return CircuitMatroid(5, m({{1, 3}, {2, 4}, {0, 1, 2}, {0, 1, 4}, {0, 2, 3}, {0, 3, 4}}));
    case MatroidTarget::MK4:
      // edges 12,13,14,23,24,34: four triangles and three 4-cycles
      return CircuitMatroid(6, m({{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}, {0, 2, 3, 5}, {0, 1, 4, 5}, {1, 2, 3, 4}}));
  }
  fail(Errc::Internal, "unknown matroid target");
}

namespace {

// sorted multiset of sizes of circuits through each element
std::vector<std::vector<int>> element_signatures(const CircuitMatroid& m) {
  std::vector<std::vector<int>> sig(m.size());
  for (Mask c : m.circuits())
    for (int e : mask_elements(c)) sig[e].push_back(std::popcount(c));
  for (auto& s : sig) std::sort(s.begin(), s.end());
  return sig;
}

std::vector<int> size_profile(const CircuitMatroid& m) {
  std::vector<int> out;
  for (Mask c : m.circuits()) out.push_back(std::popcount(c));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<int>> matroid_isomorphism(const CircuitMatroid& a, const CircuitMatroid& b) {
  if (a.size() != b.size() || a.circuits().size() != b.circuits().size()) return std::nullopt;
  if (size_profile(a) != size_profile(b)) return std::nullopt;
  const auto sa = element_signatures(a), sb = element_signatures(b);
  const int n = a.size();
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  const std::vector<Mask>& target = b.circuits();

  auto check = [&]() {
    std::vector<Mask> mapped;
    for (Mask c : a.circuits()) {
      Mask r = 0;
      for (int e : mask_elements(c)) r |= bit(image[e]);
      mapped.push_back(r);
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == target;
  };
  auto rec = [&](auto&& self, int e) -> bool {
    if (e == n) return check();
    for (int f = 0; f < n; ++f) {
      if (used[f] || sa[e] != sb[f]) continue;
      used[f] = true;
      image[e] = f;
      if (self(self, e + 1)) return true;
      used[f] = false;
    }
    return false;
  };
  if (rec(rec, 0)) return image;
  return std::nullopt;
}

std::optional<MatroidMinor> has_minor(const CircuitMatroid& m, MatroidTarget target, const Budget& budget) {
  if (m.size() > static_cast<int>(budget.matroid_minor_ground))
    fail(Errc::TooLarge, "matroid minor search limited to " + std::to_string(budget.matroid_minor_ground) + " elements");
  const CircuitMatroid t = target_matroid(target);
  const int n = m.size(), k = t.size();
  if (k > n) return std::nullopt;
  const Mask ground = bit(n) - 1;
  std::uint64_t visited = 0;
  // kept sets of size k in increasing mask order
  for (Mask kept = bit(k) - 1; kept <= ground && kept != 0;) {
    const Mask rest = ground & ~kept;
    const auto rest_el = mask_elements(rest);
    const std::uint64_t splits = std::uint64_t{1} << rest_el.size();
    for (std::uint64_t s = 0; s < splits; ++s) {
      if (++visited > budget.search_nodes) fail(Errc::BudgetExceeded, "matroid minor search budget exhausted");
      Mask del = 0;
      for (std::size_t i = 0; i < rest_el.size(); ++i)
        if (s & (std::uint64_t{1} << i)) del |= bit(rest_el[i]);
      const CircuitMatroid minor = m.minor(del, rest & ~del);
      if (auto iso = matroid_isomorphism(t, minor)) {
        const auto kept_el = mask_elements(kept);
        MatroidMinor out{del, rest & ~del, std::vector<int>(k)};
        for (int i = 0; i < k; ++i) out.kept[i] = kept_el[(*iso)[i]];
        return out;
      }
    }
    // next k-subset (Gosper's hack)
    const Mask c = kept & -kept;
    const Mask r = kept + c;
    kept = (((r ^ kept) >> 2) / c) | r;
  }
  return std::nullopt;
}

std::optional<std::pair<Mask, Mask>> intersecting_circuits(const CircuitMatroid& m) {
  const auto& c = m.circuits();
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a + 1; b < c.size(); ++b)
      if (c[a] & c[b]) return std::make_pair(c[a], c[b]);
  return std::nullopt;
}

}  // namespace clutterforge
