#include "vspace.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "matroid.hpp"

namespace clutterforge {

Matrix rref(const Field& f, Matrix rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < n && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[lead], rows[piv]);
    const Element scale = f.inv(rows[lead][col]);
    for (auto& v : rows[lead]) v = f.mul(v, scale);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col] == 0) continue;
      const Element factor = rows[r][col];
      for (std::size_t c = 0; c < n; ++c) rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[lead][c]));
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

std::uint64_t support_mask(const Point& x) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) m |= std::uint64_t{1} << i;
  return m;
}

Subspace::Subspace(FieldPtr field, int n) : field_(std::move(field)), n_(n) {
  if (n < 1 || n > 64) fail(Errc::DimensionMismatch, "ambient dimension must be in [1, 64]");
}

Subspace Subspace::span(FieldPtr field, int n, const std::vector<Point>& generators) {
  Subspace s(std::move(field), n);
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != n) fail(Errc::DimensionMismatch, "generator length differs from n");
    for (Element e : g)
      if (e >= s.q()) fail(Errc::DimensionMismatch, "generator entry outside GF(q)");
  }
  s.basis_ = rref(*s.field_, generators);
  return s;
}

Subspace Subspace::zero_sum(FieldPtr field, int n) {
  std::vector<Point> gens;
  const Element minus_one = field->neg(1);
  for (int i = 1; i < n; ++i) {
    Point v(n, 0);
    v[0] = 1;
    v[i] = minus_one;
    gens.push_back(v);
  }
  return span(std::move(field), n, gens);
}

std::vector<int> Subspace::pivots() const {
  std::vector<int> out;
  for (const auto& row : basis_) {
    for (int c = 0; c < n_; ++c) {
      if (row[c] != 0) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

std::uint64_t Subspace::point_count() const {
  std::uint64_t c = 1;
  for (int i = 0; i < dim(); ++i) {
    if (c > UINT64_MAX / static_cast<std::uint64_t>(q())) return UINT64_MAX;
    c *= static_cast<std::uint64_t>(q());
  }
  return c;
}

bool Subspace::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != n_) return false;
  // reduce x against the RREF basis
  Point r = x;
  const auto piv = pivots();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Element c = r[piv[i]];
    if (c == 0) continue;
    for (int j = 0; j < n_; ++j) r[j] = field_->sub(r[j], field_->mul(c, basis_[i][j]));
  }
  return std::all_of(r.begin(), r.end(), [](Element e) { return e == 0; });
}

std::vector<Point> Subspace::enumerate_points(std::uint64_t cap) const {
  const std::uint64_t count = point_count();
  if (count > cap) fail(Errc::TooLarge, "subspace has " + std::to_string(count) + " points, cap " + std::to_string(cap));
  std::vector<Point> out;
  out.reserve(count);
  std::vector<Element> coef(dim(), 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Point x(n_, 0);
    for (int i = 0; i < dim(); ++i) {
      if (coef[i] == 0) continue;
      for (int j = 0; j < n_; ++j) x[j] = field_->add(x[j], field_->mul(coef[i], basis_[i][j]));
    }
    out.push_back(std::move(x));
    for (int i = dim() - 1; i >= 0; --i) {
      if (++coef[i] < q()) break;
      coef[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Subspace::to_text() const {
  std::ostringstream out;
  out << q() << ' ' << n_ << '\n';
  for (const auto& row : basis_) {
    for (int j = 0; j < n_; ++j) out << (j ? " " : "") << static_cast<int>(row[j]);
    out << '\n';
  }
  return out.str();
}

std::string Subspace::to_json() const {
  nlohmann::json j;
  j["q"] = q();
  j["n"] = n_;
  j["generators"] = nlohmann::json::array();
  for (const auto& row : basis_) {
    nlohmann::json r = nlohmann::json::array();
    for (Element e : row) r.push_back(static_cast<int>(e));
    j["generators"].push_back(r);
  }
  return j.dump();
}

std::string Subspace::describe() const {
  std::ostringstream out;
  out << '<';
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out << ',';
    for (Element e : basis_[i]) out << field_->symbol(e);
  }
  out << ">/GF(" << q() << ")^" << n_;
  return out.str();
}

bool Subspace::operator<(const Subspace& o) const {
  if (q() != o.q()) return q() < o.q();
  if (n_ != o.n_) return n_ < o.n_;
  if (dim() != o.dim()) return dim() < o.dim();
  return basis_ < o.basis_;
}

namespace {

Subspace from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("q") || !j.contains("n"))
    fail(Errc::ParseError, "subspace JSON needs fields q and n");
  const int q = j.at("q").get<int>();
  const int n = j.at("n").get<int>();
  std::vector<Point> gens;
  if (j.contains("generators")) {
    for (const auto& row : j.at("generators")) {
      Point p;
      for (const auto& e : row) {
        const int v = e.get<int>();
        if (v < 0 || v >= q) fail(Errc::ParseError, "generator entry " + std::to_string(v) + " outside GF(" + std::to_string(q) + ")");
        p.push_back(static_cast<Element>(v));
      }
      if (static_cast<int>(p.size()) != n) fail(Errc::ParseError, "generator length differs from n");
      gens.push_back(p);
    }
  }
  return Subspace::span(Field::get(q), n, gens);
}

}  // namespace

Subspace parse_subspace(const std::string& input) {
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(Errc::ParseError, "line 1, column 1: empty input");
  if (input[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
      fail(Errc::ParseError, std::string("JSON: ") + e.what());
    }
    try {
      return from_json(j);
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::ParseError, std::string("JSON: ") + e.what());
    }
  }

  std::istringstream in(input);
  std::string line;
  int line_no = 0;
  int q = -1, n = -1;
  std::vector<Point> gens;
  auto where = [&](std::size_t col) {
    return "line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) + ": ";
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::vector<std::pair<long, std::size_t>> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      const std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      const std::string tok = line.substr(start, pos - start);
      if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
        fail(Errc::ParseError, where(start) + "expected a nonnegative integer, got '" + tok + "'");
      tokens.emplace_back(std::stol(tok), start);
    }
    if (tokens.empty()) continue;
    if (q < 0) {
      if (tokens.size() != 2) fail(Errc::ParseError, where(0) + "header must be `q n`");
      q = static_cast<int>(tokens[0].first);
      n = static_cast<int>(tokens[1].first);
      if (n < 1 || n > 64) fail(Errc::ParseError, where(tokens[1].second) + "n must be in [1, 64]");
      Field::get(q);
      continue;
    }
    if (static_cast<int>(tokens.size()) != n)
      fail(Errc::ParseError, where(0) + "expected " + std::to_string(n) + " entries, got " + std::to_string(tokens.size()));
    Point p;
    for (const auto& [v, col] : tokens) {
      if (v >= q) fail(Errc::ParseError, where(col) + "entry " + std::to_string(v) + " outside GF(" + std::to_string(q) + ")");
      p.push_back(static_cast<Element>(v));
    }
    gens.push_back(p);
  }
  if (q < 0) fail(Errc::ParseError, "line 1, column 1: missing `q n` header");
  return Subspace::span(Field::get(q), n, gens);
}

Subspace product(const Subspace& a, const Subspace& b) {
  if (a.q() != b.q()) fail(Errc::FieldMismatch, "product of subspaces over different fields");
  const int n = a.n() + b.n();
  std::vector<Point> gens;
  for (const auto& row : a.basis()) {
    Point p(row);
    p.resize(n, 0);
    gens.push_back(p);
  }
  for (const auto& row : b.basis()) {
    Point p(a.n(), 0);
    p.insert(p.end(), row.begin(), row.end());
    gens.push_back(p);
  }
  return Subspace::span(a.field_ptr(), n, gens);
}

Subspace project(const Subspace& s, const std::vector<int>& dropped) {
  std::vector<bool> drop(s.n(), false);
  for (int j : dropped) {
    if (j < 0 || j >= s.n()) fail(Errc::BadIndex, "coordinate " + std::to_string(j) + " out of range");
    drop[j] = true;
  }
  const int m = s.n() - static_cast<int>(std::count(drop.begin(), drop.end(), true));
  if (m < 1) fail(Errc::BadIndex, "projection would drop every coordinate");
  std::vector<Point> gens;
  for (const auto& row : s.basis()) {
    Point p;
    for (int j = 0; j < s.n(); ++j)
      if (!drop[j]) p.push_back(row[j]);
    gens.push_back(p);
  }
  return Subspace::span(s.field_ptr(), m, gens);
}

SetSystem as_set_system(const Subspace& s) {
  SetSystem out;
  out.q = s.q();
  std::vector<Element> all(s.q());
  std::iota(all.begin(), all.end(), Element{0});
  out.box.assign(s.n(), all);
  out.coords.resize(s.n());
  std::iota(out.coords.begin(), out.coords.end(), 0);
  out.points = s.enumerate_points();
  return out;
}

SetSystem restrict_to(const Subspace& s, const std::vector<std::vector<Element>>& boxes) {
  if (static_cast<int>(boxes.size()) != s.n()) fail(Errc::DimensionMismatch, "need one box per coordinate");
  std::vector<std::vector<bool>> allowed(s.n(), std::vector<bool>(s.q(), false));
  std::vector<std::vector<Element>> sorted_boxes(s.n());
  for (int i = 0; i < s.n(); ++i) {
    if (boxes[i].empty()) fail(Errc::PreconditionViolated, "restriction boxes must be nonempty");
    for (Element e : boxes[i]) {
      if (e >= s.q()) fail(Errc::BadIndex, "box value outside GF(q)");
      allowed[i][e] = true;
    }
    for (int v = 0; v < s.q(); ++v)
      if (allowed[i][v]) sorted_boxes[i].push_back(static_cast<Element>(v));
  }
  std::vector<Point> kept;
  for (auto& p : s.enumerate_points()) {
    bool ok = true;
    for (int i = 0; i < s.n() && ok; ++i) ok = allowed[i][p[i]];
    if (ok) kept.push_back(std::move(p));
  }
  SetSystem out;
  out.q = s.q();
  if (kept.empty()) {
    out.box = sorted_boxes;
    out.coords.resize(s.n());
    std::iota(out.coords.begin(), out.coords.end(), 0);
    return out;
  }
  std::vector<int> keep;
  for (int i = 0; i < s.n(); ++i) {
    const bool agree = std::all_of(kept.begin(), kept.end(), [&](const Point& p) { return p[i] == kept.front()[i]; });
    if (!agree) keep.push_back(i);
  }
  for (int i : keep) out.box.push_back(sorted_boxes[i]);
  out.coords = keep;
  for (const auto& p : kept) {
    Point r;
    for (int i : keep) r.push_back(p[i]);
    out.points.push_back(r);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::optional<std::vector<Point>> disjoint_support_basis(const Subspace& s) {
  std::uint64_t used = 0;
  for (const auto& row : s.basis()) {
    const std::uint64_t m = support_mask(row);
    if (m & used) return std::nullopt;
    used |= m;
  }
  std::vector<Point> out(s.basis().begin(), s.basis().end());
  if (!(Subspace::span(s.field_ptr(), s.n(), out) == s)) fail(Errc::Internal, "disjoint basis does not re-span");
  return out;
}

namespace {

// A point of s whose support equals `mask`, or nullopt.
std::optional<Point> point_with_support(const std::vector<Point>& points, std::uint64_t mask) {
  for (const auto& p : points)
    if (support_mask(p) == mask) return p;
  return std::nullopt;
}

}  // namespace

std::optional<SunflowerWitness> sunflower_basis(const Subspace& s) {
  const CircuitMatroid m = matroid_of(s);
  const auto comps = m.components();
  if (comps.size() != 1 || m.circuits().empty())
    fail(Errc::NotConnectedComponent, "sunflower detection needs a connected matroid without coloops");
  const auto classes = m.series_classes();
  const int t = static_cast<int>(classes.size());
  if (t < 3 || s.dim() != t - 1) return std::nullopt;

  // project onto one representative per series class
  std::vector<int> dropped;
  for (const auto& cls : classes)
    for (std::size_t i = 1; i < cls.size(); ++i) dropped.push_back(cls[i]);
  const Subspace reduced = dropped.empty() ? s : project(s, dropped);
  const CircuitMatroid rm = matroid_of(reduced);
  if (static_cast<int>(rm.circuits().size()) != t * (t - 1) / 2) return std::nullopt;
  for (auto c : rm.circuits())
    if (std::popcount(c) != 2) return std::nullopt;

  SunflowerWitness w;
  auto mask_of = [](const std::vector<int>& cls) {
    std::uint64_t mask = 0;
    for (int i : cls) mask |= std::uint64_t{1} << i;
    return mask;
  };
  const auto points = s.enumerate_points();
  const std::uint64_t head = mask_of(classes[0]);
  w.block_sizes.push_back(static_cast<int>(classes[0].size()));
  w.permutation = classes[0];
  const int head_coord = classes[0].front();
  for (int b = 1; b < t; ++b) {
    auto v = point_with_support(points, head | mask_of(classes[b]));
    if (!v) return std::nullopt;
    const Element scale = s.field().inv((*v)[head_coord]);
    for (auto& e : *v) e = s.field().mul(e, scale);
    w.rows.push_back(*v);
    w.block_sizes.push_back(static_cast<int>(classes[b].size()));
    w.permutation.insert(w.permutation.end(), classes[b].begin(), classes[b].end());
  }
  if (!check_sunflower(s, w)) return std::nullopt;
  return w;
}

bool check_sunflower(const Subspace& s, const SunflowerWitness& w) {
  const int r = static_cast<int>(w.rows.size());
  if (r < 2 || static_cast<int>(w.block_sizes.size()) != r + 1) return false;
  if (static_cast<int>(w.permutation.size()) != s.n()) return false;
  std::vector<int> perm = w.permutation;
  std::sort(perm.begin(), perm.end());
  for (int i = 0; i < s.n(); ++i)
    if (perm[i] != i) return false;
  // block boundaries in permuted order
  std::vector<int> start(r + 2, 0);
  for (int b = 0; b <= r; ++b) start[b + 1] = start[b] + w.block_sizes[b];
  if (start[r + 1] != s.n()) return false;
  for (int i = 0; i < r; ++i) {
    const Point& row = w.rows[i];
    if (static_cast<int>(row.size()) != s.n()) return false;
    for (int b = 0; b <= r; ++b) {
      for (int pos = start[b]; pos < start[b + 1]; ++pos) {
        const Element e = row[w.permutation[pos]];
        const bool should_be_nonzero = b == 0 || b == i + 1;
        if ((e != 0) != should_be_nonzero) return false;
        if (b == 0 && e != w.rows[0][w.permutation[pos]]) return false;  // shared head
      }
    }
  }
  return Subspace::span(s.field_ptr(), s.n(), w.rows) == s;
}

std::vector<Factor> factor(const Subspace& s) {
  // Components of the matroid coincide with connected components of the
  // RREF row supports; zero columns are coloops.
  std::vector<int> parent(s.n());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> in_support(s.n(), false);
  for (const auto& row : s.basis()) {
    int first = -1;
    for (int j = 0; j < s.n(); ++j) {
      if (row[j] == 0) continue;
      in_support[j] = true;
      if (first < 0)
        first = j;
      else
        parent[find(j)] = find(first);
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(s.n(), -1);
  for (int j = 0; j < s.n(); ++j) {
    const int root = find(j);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(j);
  }
  std::vector<Factor> out;
  for (const auto& g : groups) {
    std::vector<Point> gens;
    for (const auto& row : s.basis()) {
      if (row[g.front()] == 0 && std::none_of(g.begin(), g.end(), [&](int j) { return row[j] != 0; })) continue;
      Point p;
      for (int j : g) p.push_back(row[j]);
      gens.push_back(p);
    }
    out.push_back({g, Subspace::span(s.field_ptr(), static_cast<int>(g.size()), gens)});
  }
  return out;
}

Subspace assemble(const FieldPtr& field, int n, const std::vector<Factor>& factors) {
  std::vector<Point> gens;
  for (const auto& f : factors) {
    for (const auto& row : f.space.basis()) {
      Point p(n, 0);
      for (std::size_t i = 0; i < f.coords.size(); ++i) p[f.coords[i]] = row[i];
      gens.push_back(p);
    }
  }
  return Subspace::span(field, n, gens);
}

}  // namespace clutterforge
