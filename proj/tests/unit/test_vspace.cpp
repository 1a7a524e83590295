#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "error.hpp"
#include "matroid.hpp"
#include "oracles.hpp"
#include "vspace.hpp"

using namespace clutterforge;

namespace {

Subspace from_points(const FieldPtr& f, int n, const std::vector<Point>& pts) { return Subspace::span(f, n, pts); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Ok;
}

}  // namespace

TEST_CASE("R11 and the 16-point GF(4) space") {
  const auto r11 = Subspace::span(Field::get(2), 3, {{0, 1, 1}, {1, 0, 1}});
  CHECK(r11.dim() == 2);
  CHECK(r11.enumerate_points() == std::vector<Point>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});

  const auto s = Subspace::span(Field::get(4), 3, {{1, 1, 0}, {1, 0, 1}});
  const Element a = 2, b = 3;
  std::vector<Point> listed = {{0, 0, 0}, {1, 1, 0}, {a, a, 0}, {b, b, 0}, {1, 0, 1}, {0, 1, 1}, {b, a, 1}, {a, b, 1},
                               {a, 0, a}, {b, 1, a}, {0, a, a}, {1, b, a}, {b, 0, b}, {a, 1, b}, {1, a, b}, {0, b, b}};
  std::sort(listed.begin(), listed.end());
  CHECK(s.enumerate_points() == listed);
  CHECK(Subspace::span(Field::get(4), 3, {}).dim() == 0);
  CHECK(Subspace(Field::get(5), 3).enumerate_points() == std::vector<Point>{{0, 0, 0}});
}

TEST_CASE("span rejects mismatched generators") {
  CHECK(code_of([] { Subspace::span(Field::get(3), 3, {{1, 1}}); }) == Errc::DimensionMismatch);
}

TEST_CASE("subspace counts and span of enumeration is the identity") {
  struct Case {
    int q, n;
    std::size_t count;
  };
  for (auto [q, n, count] : {Case{3, 4, 212}, Case{4, 3, 44}, Case{2, 2, 5}, Case{3, 2, 6}, Case{2, 4, 67}}) {
    const auto f = Field::get(q);
    const auto all = oracle::all_subspaces(*f, n);
    CHECK(all.size() == count);
    std::set<Subspace> distinct;
    for (const auto& pts : all) {
      const auto s = from_points(f, n, pts);
      REQUIRE(s.enumerate_points() == pts);
      CHECK(s.point_count() == pts.size());
      CHECK(Subspace::span(f, n, s.enumerate_points()) == s);
      CHECK(Subspace::span(f, n, s.basis()) == s);
      for (const auto& p : pts) CHECK(s.contains(p));
      distinct.insert(s);
    }
    CHECK(distinct.size() == count);
  }
}

TEST_CASE("product enumerates concatenated pairs") {
  const auto f = Field::get(3);
  const auto all = oracle::all_subspaces(*f, 2);
  for (const auto& a : all)
    for (const auto& b : all) {
      std::vector<Point> pairs;
      for (const auto& x : a)
        for (const auto& y : b) {
          Point p = x;
          p.insert(p.end(), y.begin(), y.end());
          pairs.push_back(p);
        }
      std::sort(pairs.begin(), pairs.end());
      const auto pr = product(from_points(f, 2, a), from_points(f, 2, b));
      CHECK(pr.n() == 4);
      CHECK(pr.enumerate_points() == pairs);
    }
  CHECK(code_of([&] { product(Subspace(Field::get(3), 1), Subspace(Field::get(5), 1)); }) == Errc::FieldMismatch);
}

TEST_CASE("projection drops coordinates of every point") {
  const auto r11 = Subspace::span(Field::get(2), 3, {{0, 1, 1}, {1, 0, 1}});
  CHECK(project(r11, {2}).dim() == 2);
  CHECK(project(r11, {}) == r11);
  const auto ex = Subspace::span(Field::get(4), 3, {{1, 1, 0}, {1, 0, 1}});
  CHECK(project(ex, {1, 2}).dim() == 1);
  CHECK(code_of([&] { project(r11, {3}); }) == Errc::BadIndex);

  const auto f = Field::get(3);
  for (const auto& pts : oracle::all_subspaces(*f, 3)) {
    const auto s = from_points(f, 3, pts);
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<int> drop;
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) drop.push_back(i);
      if (drop.size() == 3) continue;
      std::set<Point> expect;
      for (const auto& p : pts) {
        Point r;
        for (int i = 0; i < 3; ++i)
          if (!(mask >> i & 1)) r.push_back(p[i]);
        expect.insert(r);
      }
      const auto pr = project(s, drop);
      const auto got = pr.enumerate_points();
      CHECK(std::vector<Point>(expect.begin(), expect.end()) == got);
    }
  }
}

TEST_CASE("restriction") {
  const auto ex = Subspace::span(Field::get(4), 3, {{1, 1, 0}, {1, 0, 1}});
  const auto r = restrict_to(ex, {{0, 1}, {0, 1}, {0, 1}});
  CHECK(r.coords == std::vector<int>{0, 1, 2});
  CHECK(r.points == std::vector<Point>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});

  const auto r11 = Subspace::span(Field::get(2), 3, {{0, 1, 1}, {1, 0, 1}});
  const auto r2 = restrict_to(r11, {{0}, {0, 1}, {0, 1}});
  CHECK(r2.coords == std::vector<int>{1, 2});
  CHECK(r2.points == std::vector<Point>{{0, 0}, {1, 1}});

  const auto full = restrict_to(ex, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}});
  CHECK(full.points == ex.enumerate_points());

  const auto line = Subspace::span(Field::get(3), 2, {{1, 1}});
  const auto empty = restrict_to(line, {{1}, {2}});
  CHECK(empty.points.empty());
  CHECK(empty.arity() == 2);
}

TEST_CASE("disjoint-support basis exists iff circuits are pairwise disjoint") {
  for (auto [q, n] : {std::pair{3, 4}, std::pair{4, 3}}) {
    const auto f = Field::get(q);
    int present = 0;
    for (const auto& pts : oracle::all_subspaces(*f, n)) {
      const auto s = from_points(f, n, pts);
      const auto circ = oracle::circuits(pts);
      bool disjoint = true;
      for (std::size_t i = 0; i < circ.size(); ++i)
        for (std::size_t j = i + 1; j < circ.size(); ++j)
          if (circ[i] & circ[j]) disjoint = false;
      const auto basis = disjoint_support_basis(s);
      REQUIRE(basis.has_value() == disjoint);
      if (!basis) continue;
      ++present;
      CHECK(static_cast<int>(basis->size()) == s.dim());
      for (std::size_t i = 0; i < basis->size(); ++i)
        for (std::size_t j = i + 1; j < basis->size(); ++j) CHECK((support_mask((*basis)[i]) & support_mask((*basis)[j])) == 0);
      CHECK(Subspace::span(f, n, *basis) == s);
    }
    CHECK(present > 0);
  }
  CHECK(disjoint_support_basis(Subspace::span(Field::get(3), 3, {{1, 1, 0}, {0, 0, 1}})).has_value());
  CHECK_FALSE(disjoint_support_basis(Subspace::span(Field::get(2), 3, {{0, 1, 1}, {1, 0, 1}})).has_value());
  CHECK(disjoint_support_basis(Subspace(Field::get(3), 2))->empty());
}

TEST_CASE("sunflower bases") {
  const auto f4 = Field::get(4);
  const auto ex = Subspace::span(f4, 3, {{1, 1, 0}, {1, 0, 1}});
  const auto w = sunflower_basis(ex);
  REQUIRE(w.has_value());
  CHECK(w->t() == 3);
  CHECK(w->block_sizes.front() == 1);
  CHECK(check_sunflower(ex, *w));

  CHECK_FALSE(sunflower_basis(Subspace::span(f4, 3, {{1, 1, 1}})).has_value());

  const auto head2 = Subspace::span(f4, 5, {{1, 1, 1, 0, 0}, {1, 1, 0, 1, 1}});
  const auto w2 = sunflower_basis(head2);
  REQUIRE(w2.has_value());
  CHECK(w2->block_sizes == std::vector<int>{2, 1, 2});
  CHECK(check_sunflower(head2, *w2));

  const auto disconnected = Subspace::span(f4, 3, {{1, 1, 0}});
  CHECK(code_of([&] { sunflower_basis(disconnected); }) == Errc::NotConnectedComponent);

  // U24 is connected without coloops but not a subdivided A_t
  const auto u24 = Subspace::span(f4, 4, {{1, 0, 1, 1}, {0, 1, 1, 2}});
  CHECK_FALSE(sunflower_basis(u24).has_value());
}

TEST_CASE("sunflower witness spans S whenever present") {
  const auto f = Field::get(3);
  int found = 0;
  for (const auto& pts : oracle::all_subspaces(*f, 4)) {
    const auto s = from_points(f, 4, pts);
    const auto m = matroid_of(s);
    if (m.components().size() != 1 || m.circuits().empty()) continue;
    if (auto w = sunflower_basis(s)) {
      ++found;
      CHECK(check_sunflower(s, *w));
      CHECK(Subspace::span(f, 4, w->rows) == s);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("factorization reassembles and is finest") {
  const auto f3 = Field::get(3);
  auto fs = factor(Subspace::span(f3, 3, {{1, 1, 0}, {0, 0, 1}}));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].coords == std::vector<int>{0, 1});
  CHECK(fs[1].coords == std::vector<int>{2});
  CHECK(factor(Subspace::span(Field::get(2), 3, {{0, 1, 1}, {1, 0, 1}})).size() == 1);
  auto zero = factor(Subspace(f3, 2));
  CHECK(zero.size() == 2);

  for (const auto& pts : oracle::all_subspaces(*f3, 4)) {
    const auto s = from_points(f3, 4, pts);
    const auto parts = factor(s);
    CHECK(assemble(s.field_ptr(), 4, parts) == s);
    std::vector<std::vector<int>> coords;
    for (const auto& p : parts) coords.push_back(p.coords);
    std::sort(coords.begin(), coords.end());
    CHECK(coords == matroid_of(s).components());
    // no factor splits further: S never equals the product of two projections
    for (const auto& p : parts) {
      const int k = static_cast<int>(p.coords.size());
      for (int mask = 1; mask + 1 < (1 << k); ++mask) {
        std::vector<int> left, right;
        for (int i = 0; i < k; ++i) (mask >> i & 1 ? left : right).push_back(i);
        const auto a = project(p.space, left), b = project(p.space, right);
        CHECK(static_cast<std::uint64_t>(a.point_count() * b.point_count()) != p.space.point_count());
      }
    }
  }
}

TEST_CASE("parsing") {
  const auto s = parse_subspace("4 3\n1 1 0\n1 0 1\n");
  CHECK(s == Subspace::span(Field::get(4), 3, {{1, 1, 0}, {1, 0, 1}}));
  CHECK(parse_subspace(R"({"q":4,"n":3,"generators":[[1,1,0],[1,0,1]]})") == s);
  CHECK(parse_subspace(s.to_text()) == s);
  CHECK(parse_subspace(s.to_json()) == s);
  CHECK(code_of([] { parse_subspace("4 3\n1 1\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_subspace("4 3\n1 x 0\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_subspace("6 3\n"); }) == Errc::NotPrimePower);
  CHECK(code_of([] { parse_subspace("4 3\n1 4 0\n"); }) != Errc::Ok);
}
