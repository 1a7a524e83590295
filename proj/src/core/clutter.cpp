#include "clutter.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "error.hpp"

namespace clutterforge {

std::string element_label(const GroundElement& e) {
  if (e.part < 0) return std::to_string(e.value);
  return std::to_string(e.part + 1) + ":" + std::to_string(e.value);
}

std::vector<Mask> minimal_sets(std::vector<Mask> sets) {
  std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<Mask> out;
  for (Mask s : sets) {
    const int ps = std::popcount(s);
    bool dominated = false;
    for (Mask k : out) {
      if (std::popcount(k) >= ps) break;
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

Clutter::Clutter(std::vector<GroundElement> ground, std::vector<Mask> members) : ground_(std::move(ground)) {
  if (ground_.size() > 64) fail(Errc::TooLarge, "clutter ground sets are limited to 64 elements");
  std::vector<GroundElement> sorted = ground_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(Errc::PreconditionViolated, "duplicate ground element");
  for (Mask m : members)
    if (m & ~full()) fail(Errc::BadIndex, "member uses an element outside the ground set");
  members_ = minimal_sets(std::move(members));
}

int Clutter::index_of(const GroundElement& e) const {
  auto it = std::find(ground_.begin(), ground_.end(), e);
  return it == ground_.end() ? -1 : static_cast<int>(it - ground_.begin());
}

std::string Clutter::to_text() const {
  std::ostringstream out;
  out << "elements:";
  for (const auto& e : ground_) out << ' ' << element_label(e);
  out << '\n';
  for (Mask m : members_) {
    if (m == 0) out << "{}";
    bool first = true;
    for (int e : mask_elements(m)) {
      out << (first ? "" : " ") << element_label(ground_[e]);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

Clutter make_clutter(int n, const std::vector<std::vector<int>>& members) {
  std::vector<GroundElement> ground(n);
  for (int i = 0; i < n; ++i) ground[i] = {-1, i + 1};
  std::vector<Mask> ms;
  for (const auto& m : members) {
    Mask x = 0;
    for (int e : m) {
      if (e < 1 || e > n) fail(Errc::BadIndex, "member label out of range");
      x |= bit(e - 1);
    }
    ms.push_back(x);
  }
  return Clutter(std::move(ground), std::move(ms));
}

namespace {

GroundElement parse_label(const std::string& tok, int line_no) {
  auto bad = [&]() -> GroundElement {
    fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad element label `" + tok + "`");
  };
  auto to_int = [&](const std::string& s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      bad();
    return std::stoi(s);
  };
  const auto colon = tok.find(':');
  if (colon == std::string::npos) return {-1, to_int(tok)};
  const int part = to_int(tok.substr(0, colon));
  if (part < 1) bad();
  return {part - 1, to_int(tok.substr(colon + 1))};
}

}  // namespace

Clutter parse_clutter(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::vector<GroundElement> ground;
  std::map<GroundElement, int> index;
  std::vector<Mask> members;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.front() != "elements:")
        fail(Errc::ParseError, "line " + std::to_string(line_no) + ", column 1: expected `elements:` header");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto e = parse_label(toks[i], line_no);
        if (index.count(e)) fail(Errc::ParseError, "line " + std::to_string(line_no) + ": duplicate element " + toks[i]);
        if (ground.size() == 64) fail(Errc::TooLarge, "clutter ground sets are limited to 64 elements");
        index[e] = static_cast<int>(ground.size());
        ground.push_back(e);
      }
      have_header = true;
      continue;
    }
    Mask m = 0;
    if (!(toks.size() == 1 && toks.front() == "{}")) {
      for (const auto& t : toks) {
        auto it = index.find(parse_label(t, line_no));
        if (it == index.end()) fail(Errc::ParseError, "line " + std::to_string(line_no) + ": unknown element " + t);
        m |= bit(it->second);
      }
    }
    members.push_back(m);
  }
  if (!have_header) fail(Errc::ParseError, "line 1, column 1: missing `elements:` header");
  return Clutter(std::move(ground), std::move(members));
}

Clutter mult(const SetSystem& s) {
  if (s.points.size() > (std::size_t{1} << 16)) fail(Errc::TooLarge, "mult limited to 2^16 points");
  std::vector<GroundElement> ground;
  std::vector<std::vector<int>> slot(s.arity(), std::vector<int>(s.q, -1));
  for (int i = 0; i < s.arity(); ++i) {
    for (Element u : s.box[i]) {
      if (ground.size() == 64) fail(Errc::TooLarge, "mult ground set would exceed 64 elements");
      slot[i][u] = static_cast<int>(ground.size());
      ground.push_back({s.coords[i], static_cast<int>(u)});
    }
  }
  std::vector<Mask> members;
  members.reserve(s.points.size());
  for (const auto& p : s.points) {
    Mask m = 0;
    for (int i = 0; i < s.arity(); ++i) {
      if (slot[i][p[i]] < 0) fail(Errc::PreconditionViolated, "point outside its box");
      m |= bit(slot[i][p[i]]);
    }
    members.push_back(m);
  }
  return Clutter(std::move(ground), std::move(members));
}

Clutter mult(const Subspace& s) {
  if (s.q() * s.n() > 64) fail(Errc::TooLarge, "mult needs q*n <= 64");
  if (s.point_count() > (std::uint64_t{1} << 16)) fail(Errc::TooLarge, "mult limited to 2^16 points");
  return mult(as_set_system(s));
}

Clutter minor(const Clutter& c, const MinorSpec& m) {
  if (m.deleted & m.contracted) fail(Errc::OverlapError, "delete and contract sets overlap");
  if ((m.deleted | m.contracted) & ~c.full()) fail(Errc::BadIndex, "minor set outside ground set");
  const Mask keep = c.full() & ~m.deleted & ~m.contracted;
  const auto kept = mask_elements(keep);
  std::vector<GroundElement> ground;
  for (int e : kept) ground.push_back(c.ground()[e]);
  std::vector<Mask> members;
  for (Mask x : c.members()) {
    if (x & m.deleted) continue;
    Mask y = 0;
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (x & bit(kept[i])) y |= bit(static_cast<int>(i));
    members.push_back(y);
  }
  return Clutter(std::move(ground), std::move(members));
}

Clutter product(const Clutter& a, const Clutter& b) {
  if (a.size() + b.size() > 64) fail(Errc::TooLarge, "product ground set would exceed 64 elements");
  std::vector<GroundElement> ground = a.ground();
  std::vector<GroundElement> second = b.ground();
  const bool collide = std::any_of(second.begin(), second.end(), [&](const GroundElement& e) { return a.index_of(e) >= 0; });
  if (collide) {
    int max_part = -1, max_label = 0;
    for (const auto& e : a.ground()) {
      if (e.part >= 0) max_part = std::max(max_part, e.part);
      else max_label = std::max(max_label, e.value);
    }
    for (auto& e : second) {
      if (e.part >= 0) e.part += max_part + 1;
      else e.value += max_label;
    }
  }
  ground.insert(ground.end(), second.begin(), second.end());
  std::vector<Mask> members;
  for (Mask x : a.members())
    for (Mask y : b.members()) members.push_back(x | (y << a.size()));
  return Clutter(std::move(ground), std::move(members));
}

Clutter localization(const Subspace& s, const Point& v) {
  if (static_cast<int>(v.size()) != s.n()) fail(Errc::DimensionMismatch, "point length differs from n");
  const Clutter m = mult(s);
  Mask contract = 0;
  for (int i = 0; i < s.n(); ++i) {
    if (v[i] >= s.q()) fail(Errc::BadIndex, "coordinate outside GF(q)");
    contract |= bit(i * s.q() + v[i]);
  }
  return minor(m, {0, contract});
}

namespace {

struct Signature {
  int degree;
  std::vector<int> sizes;
  bool operator==(const Signature&) const = default;
};

std::vector<Signature> signatures(const Clutter& c) {
  std::vector<Signature> sig(c.size(), Signature{0, {}});
  for (Mask m : c.members()) {
    for (int e : mask_elements(m)) {
      ++sig[e].degree;
      sig[e].sizes.push_back(std::popcount(m));
    }
  }
  for (auto& s : sig) std::sort(s.sizes.begin(), s.sizes.end());
  return sig;
}

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Clutter& a, const Clutter& b, const Budget& budget) {
  if (a.size() > static_cast<int>(budget.isomorphism_ground) || b.size() > static_cast<int>(budget.isomorphism_ground))
    fail(Errc::TooLarge, "isomorphism search limited to " + std::to_string(budget.isomorphism_ground) + " elements");
  if (a.size() != b.size() || a.members().size() != b.members().size()) return std::nullopt;
  std::vector<int> pa, pb;
  for (Mask m : a.members()) pa.push_back(std::popcount(m));
  for (Mask m : b.members()) pb.push_back(std::popcount(m));
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  if (pa != pb) return std::nullopt;
  const auto sa = signatures(a), sb = signatures(b);
  {
    auto ka = sa, kb = sb;
    auto less = [](const Signature& x, const Signature& y) {
      return x.degree != y.degree ? x.degree < y.degree : x.sizes < y.sizes;
    };
    std::sort(ka.begin(), ka.end(), less);
    std::sort(kb.begin(), kb.end(), less);
    if (!(ka == kb)) return std::nullopt;
  }
  const int n = a.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return sa[x].degree > sa[y].degree; });

  const std::unordered_set<Mask> bset(b.members().begin(), b.members().end());
  std::vector<int> image(n, -1);
  Mask used = 0, mapped = 0;
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, int d) -> bool {
    if (d == n) return true;
    if (++nodes > budget.search_nodes) fail(Errc::BudgetExceeded, "isomorphism search budget exhausted");
    const int e = order[d];
    for (int f = 0; f < n; ++f) {
      if ((used & bit(f)) || !(sa[e] == sb[f])) continue;
      image[e] = f;
      const Mask nm = mapped | bit(e), nu = used | bit(f);
      bool ok = true;
      int count_a = 0, count_b = 0;
      for (Mask m : a.members()) {
        if ((m & nm) != m) continue;
        ++count_a;
        if (m & bit(e)) {
          Mask img = 0;
          for (int x : mask_elements(m)) img |= bit(image[x]);
          if (!bset.count(img)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        for (Mask m : b.members())
          if ((m & nu) == m) ++count_b;
        ok = count_a == count_b;
      }
      if (ok) {
        mapped = nm;
        used = nu;
        if (self(self, d + 1)) return true;
        mapped &= ~bit(e);
        used &= ~bit(f);
      }
      image[e] = -1;
    }
    return false;
  };
  if (rec(rec, 0)) return image;
  return std::nullopt;
}

namespace {

// Minor search on a fixed kept set K with a fixed labelling phi.
// The minor C\I/J equals phi(T) iff every target member t has a witness
// member W_t with W_t & K == phi(t) avoiding I, and every member whose trace
// on K contains no phi(t) meets I. Taking I as large as the witnesses allow
// leaves a choice of one witness per t such that no such bad member lies
// inside K plus the union of the witnesses.
class MinorSearch {
 public:
  MinorSearch(const Clutter& host, const Clutter& target, const Budget& budget)
      : host_(host), target_(target), budget_(budget), n_(host.size()), k_(target.size()) {
    // order target elements so that members complete as early as possible
    std::vector<Mask> tm = target.members();
    std::sort(tm.begin(), tm.end(), [](Mask x, Mask y) { return std::popcount(x) < std::popcount(y); });
    Mask seen = 0;
    for (Mask m : tm)
      for (int e : mask_elements(m))
        if (!(seen & bit(e))) {
          seen |= bit(e);
          order_.push_back(e);
        }
    for (int e = 0; e < k_; ++e)
      if (!(seen & bit(e))) order_.push_back(e);
    completes_.assign(k_, {});
    std::vector<int> pos(k_);
    for (int d = 0; d < k_; ++d) pos[order_[d]] = d;
    for (std::size_t t = 0; t < tm.size(); ++t) {
      int last = -1;
      for (int e : mask_elements(tm[t])) last = std::max(last, pos[e]);
      if (last >= 0) completes_[last].push_back(tm[t]);
      else empty_member_ = true;
    }
    targets_ = tm;
    phi_.assign(k_, -1);
  }

  std::optional<MinorWitness> run() {
    if (k_ > n_) return std::nullopt;
    if (!prefix_ok(0, 0)) return std::nullopt;
    if (rec(0, 0)) return result_;
    return std::nullopt;
  }

 private:
  Mask image(Mask t) const {
    Mask r = 0;
    for (int e : mask_elements(t)) r |= bit(phi_[e]);
    return r;
  }

  void tick() {
    if (++nodes_ > budget_.search_nodes) fail(Errc::BudgetExceeded, "minor search budget exhausted");
  }

  // Checks that can be decided once the elements in `assigned` are fixed.
  bool prefix_ok(Mask assigned, Mask fresh) {
    // host members inside the assigned set stay whole in the minor and
    // must contain an image of some completed target member
    completed_images_.clear();
    for (Mask t : targets_)
      if ((image_partial(t) & ~assigned) == 0 && all_assigned(t)) completed_images_.push_back(image(t));
    for (Mask c : host_.members()) {
      if ((c & assigned) != c) continue;
      if (fresh && !(c & fresh)) continue;
      const bool covers = std::any_of(completed_images_.begin(), completed_images_.end(), [&](Mask t) { return (t & c) == t; });
      if (!covers) return false;
    }
    return true;
  }

  bool all_assigned(Mask t) const {
    for (int e : mask_elements(t))
      if (phi_[e] < 0) return false;
    return true;
  }
  Mask image_partial(Mask t) const {
    Mask r = 0;
    for (int e : mask_elements(t))
      if (phi_[e] >= 0) r |= bit(phi_[e]);
    return r;
  }

  bool rec(int d, Mask assigned) {
    tick();
    if (d == k_) return leaf(assigned);
    const int w = order_[d];
    for (int v = 0; v < n_; ++v) {
      if (assigned & bit(v)) continue;
      phi_[w] = v;
      const Mask next = assigned | bit(v);
      bool ok = true;
      // each member completed here needs a host member through its image
      // that avoids the other assigned elements
      for (Mask t : completes_[d]) {
        const Mask img = image(t);
        const Mask forbidden = next & ~img;
        const bool found = std::any_of(host_.members().begin(), host_.members().end(),
                                       [&](Mask c) { return (c & img) == img && !(c & forbidden); });
        if (!found) {
          ok = false;
          break;
        }
      }
      if (ok) ok = prefix_ok(next, bit(v));
      if (ok && rec(d + 1, next)) return true;
      phi_[w] = -1;
    }
    return false;
  }

  bool leaf(Mask kept) {
    std::vector<Mask> images;
    for (Mask t : targets_) images.push_back(image(t));
    std::vector<Mask> bad;  // parts outside K of members that must meet I
    for (Mask c : host_.members()) {
      const Mask trace = c & kept;
      const bool covers = std::any_of(images.begin(), images.end(), [&](Mask t) { return (t & trace) == t; });
      if (!covers) {
        if ((c & ~kept) == 0) return false;
        bad.push_back(c & ~kept);
      }
    }
    bad = minimal_sets(std::move(bad));
    // candidate outside-parts per target member
    std::vector<std::vector<Mask>> cand(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (Mask c : host_.members()) {
        if ((c & kept) != images[i]) continue;
        const Mask out = c & ~kept;
        const bool hopeless = std::any_of(bad.begin(), bad.end(), [&](Mask b) { return (b & out) == b; });
        if (!hopeless) cand[i].push_back(out);
      }
      cand[i] = minimal_sets(std::move(cand[i]));
      if (cand[i].empty()) return false;
    }
    std::vector<std::size_t> idx(images.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return cand[x].size() < cand[y].size(); });
    Mask used_out = 0;
    auto pick = [&](auto&& self, std::size_t j, Mask u) -> bool {
      tick();
      if (j == idx.size()) {
        used_out = u;
        return true;
      }
      for (Mask o : cand[idx[j]]) {
        const Mask nu = u | o;
        const bool blocked = std::any_of(bad.begin(), bad.end(), [&](Mask b) { return (b & nu) == b; });
        if (!blocked && self(self, j + 1, nu)) return true;
      }
      return false;
    };
    if (!pick(pick, 0, 0)) return false;
    MinorWitness w;
    w.spec.contracted = used_out;
    w.spec.deleted = host_.full() & ~kept & ~used_out;
    w.map = phi_;
    result_ = w;
    return true;
  }

  const Clutter& host_;
  const Clutter& target_;
  const Budget& budget_;
  int n_, k_;
  std::vector<int> order_;
  std::vector<std::vector<Mask>> completes_;
  std::vector<Mask> targets_;
  std::vector<Mask> completed_images_;
  bool empty_member_ = false;
  std::vector<int> phi_;
  std::uint64_t nodes_ = 0;
  MinorWitness result_;
};

}  // namespace

std::optional<MinorWitness> find_minor(const Clutter& c, const Clutter& target, const Budget& budget) {
  MinorSearch search(c, target, budget);
  auto w = search.run();
  if (w && !check_minor_witness(c, target, *w)) fail(Errc::Internal, "minor search produced an invalid witness");
  return w;
}

bool check_minor_witness(const Clutter& c, const Clutter& target, const MinorWitness& w) {
  if (w.spec.deleted & w.spec.contracted) return false;
  if ((w.spec.deleted | w.spec.contracted) & ~c.full()) return false;
  if (static_cast<int>(w.map.size()) != target.size()) return false;
  const Mask kept = c.full() & ~w.spec.deleted & ~w.spec.contracted;
  if (std::popcount(kept) != target.size()) return false;
  Mask image = 0;
  for (int v : w.map) {
    if (v < 0 || v >= c.size() || !(kept & bit(v)) || (image & bit(v))) return false;
    image |= bit(v);
  }
  const Clutter m = minor(c, w.spec);
  // position of each kept host element inside the minor
  std::vector<int> pos(c.size(), -1);
  int p = 0;
  for (int e : mask_elements(kept)) pos[e] = p++;
  std::vector<Mask> mapped;
  for (Mask t : target.members()) {
    Mask r = 0;
    for (int e : mask_elements(t)) r |= bit(pos[w.map[e]]);
    mapped.push_back(r);
  }
  std::sort(mapped.begin(), mapped.end());
  return mapped == m.members();
}

std::string minor_certificate(const Clutter& c, const Clutter& target, const MinorWitness& w) {
  auto set = [&](Mask m) {
    std::string s = "{";
    bool first = true;
    for (int e : mask_elements(m)) {
      s += (first ? "" : ",") + element_label(c.ground()[e]);
      first = false;
    }
    return s + "}";
  };
  std::string out = "I=" + set(w.spec.deleted) + " J=" + set(w.spec.contracted) + " map:";
  for (int i = 0; i < target.size(); ++i)
    out += " " + element_label(target.ground()[i]) + "→" + element_label(c.ground()[w.map[i]]);
  return out;
}

const char* builtin_name(Builtin b) {
  switch (b) {
    case Builtin::Delta3: return "Delta3";
    case Builtin::Q6: return "Q6";
    case Builtin::C5sq: return "C5sq";
  }
  return "?";
}

Clutter builtin(Builtin b) {
  switch (b) {
    case Builtin::Delta3: return make_clutter(3, {{1, 2}, {2, 3}, {3, 1}});
    case Builtin::Q6: return make_clutter(6, {{1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
    case Builtin::C5sq: return make_clutter(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
  }
  fail(Errc::Internal, "unknown builtin clutter");
}

std::vector<std::vector<int>> incidence_matrix(const Clutter& c) {
  std::vector<std::vector<int>> rows;
  for (Mask m : c.members()) {
    std::vector<int> r(c.size(), 0);
    for (int e : mask_elements(m)) r[e] = 1;
    rows.push_back(r);
  }
  // rows in decreasing lexicographic order, which lists uniform members lexicographically
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return rows;
}

}  // namespace clutterforge
