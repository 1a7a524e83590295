#include <doctest.h>

#include <random>

#include "error.hpp"
#include "oracles.hpp"
#include "polyhedral.hpp"

using namespace clutterforge;

namespace {

Clutter random_clutter(std::mt19937& rng, int n, int members) {
  std::uniform_int_distribution<Mask> pick(1, bit(n) - 1);
  std::vector<Mask> ms;
  for (int i = 0; i < members; ++i) ms.push_back(pick(rng));
  std::vector<GroundElement> g;
  for (int i = 0; i < n; ++i) g.push_back({-1, i + 1});
  return Clutter(g, ms);
}

RationalVector halves(int n) { return RationalVector(n, Rational(1, 2)); }

std::vector<long long> as_ll(const WeightVector& w) { return {w.begin(), w.end()}; }

}  // namespace

TEST_CASE("fractional points of Delta3 and C5sq") {
  const auto d3 = extreme_points(builtin(Builtin::Delta3));
  CHECK(std::count(d3.begin(), d3.end(), halves(3)) == 1);
  const auto c5 = extreme_points(builtin(Builtin::C5sq));
  CHECK(std::count(c5.begin(), c5.end(), halves(5)) == 1);
  for (const auto& x : d3) CHECK(is_extreme_point(builtin(Builtin::Delta3), x));

  const auto cert = is_ideal(builtin(Builtin::Delta3));
  CHECK_FALSE(cert.integral);
  REQUIRE(cert.fractional.has_value());
  CHECK(cert.fractional->x == halves(3));
  CHECK(cert.fractional->tight_members.size() == 3);
  CHECK(cert.fractional->tight_bounds.empty());
}

TEST_CASE("integral clutters") {
  CHECK(is_ideal(builtin(Builtin::Q6)).integral);
  const auto single = make_clutter(3, {{1, 2}});
  const auto pts = extreme_points(single);
  CHECK(pts == std::vector<RationalVector>{{0, 1, 0}, {1, 0, 0}});
  CHECK(extreme_points(make_clutter(2, {})) == std::vector<RationalVector>{{0, 0}});
  CHECK(extreme_points(make_clutter(2, {{}})).empty());
  CHECK(is_ideal(mult(Subspace::span(Field::get(4), 3, {{1, 1, 0}, {1, 0, 1}}))).integral);
}

TEST_CASE("vertex enumeration agrees with basis enumeration") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 120; ++iter) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const auto c = random_clutter(rng, n, 2 + static_cast<int>(rng() % 6));
    const auto dd = extreme_points(c);
    CHECK(dd == oracle::vertices_by_bases(c));
    for (const auto& x : dd) CHECK(is_extreme_point(c, x));
  }
  for (auto b : {Builtin::Delta3, Builtin::Q6, Builtin::C5sq})
    CHECK(extreme_points(builtin(b)) == oracle::vertices_by_bases(builtin(b)));
}

TEST_CASE("size cap is reported") {
  Budget small = default_budget();
  small.vertex_enum_ground = 5;
  CHECK_THROWS_AS(extreme_points(builtin(Builtin::Q6), small), Error);
}

TEST_CASE("tau and nu on the named clutters") {
  const auto q6 = builtin(Builtin::Q6), d3 = builtin(Builtin::Delta3);
  CHECK(tau(q6, unit_weights(q6)) == 2);
  CHECK(nu(q6, unit_weights(q6)) == 1);
  CHECK_FALSE(packs(q6));
  CHECK(tau(d3, unit_weights(d3)) == 2);
  CHECK(nu(d3, unit_weights(d3)) == 1);
  CHECK(tau(q6, WeightVector(6, 0)) == 0);
  CHECK(packs(make_clutter(3, {{1, 2, 3}})));
  WeightVector inf(3, kInfinity);
  CHECK(tau(d3, inf) == kInfinity);
  inf[0] = 1;
  CHECK(tau(d3, inf) == kInfinity);
  inf[1] = 1;
  CHECK(tau(d3, inf) == 2);
}

TEST_CASE("tau and nu agree with full enumeration") {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const auto c = random_clutter(rng, n, 2 + static_cast<int>(rng() % 5));
    WeightVector w(n);
    for (auto& x : w) x = static_cast<Weight>(rng() % 3);
    CHECK(tau(c, w) == oracle::brute_tau(c, as_ll(w)));
    CHECK(nu(c, w) == oracle::brute_nu(c, as_ll(w)));
    const auto y = max_packing(c, w);
    std::vector<Weight> load(n, 0);
    for (std::size_t j = 0; j < y.size(); ++j)
      for (int e : mask_elements(c.members()[j])) load[e] += y[j];
    for (int e = 0; e < n; ++e) CHECK(load[e] <= w[e]);
  }
}

TEST_CASE("LP duality chain") {
  std::mt19937 rng(29);
  for (int iter = 0; iter < 150; ++iter) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const auto c = random_clutter(rng, n, 2 + static_cast<int>(rng() % 5));
    WeightVector w(n);
    for (auto& x : w) x = static_cast<Weight>(rng() % 4);
    const auto ts = tau_star(c, w);
    const auto ns = nu_star(c, w);
    CHECK(ts.value == ns.value);
    CHECK(Rational(tau(c, w)) >= ts.value);
    CHECK(ts.value >= Rational(nu(c, w)));
    // the dual solution is feasible
    for (int v = 0; v < n; ++v) {
      Rational load = 0;
      for (std::size_t j = 0; j < c.members().size(); ++j)
        if (c.members()[j] & bit(v)) load += ns.primal[j];
      CHECK(load <= w[v]);
    }
  }
  CHECK(tau_star(builtin(Builtin::Delta3), WeightVector(3, 1)).value == Rational(3, 2));
  CHECK(tau_star(builtin(Builtin::Q6), WeightVector(6, 1)).value == 2);
  CHECK(tau_star(builtin(Builtin::Q6), WeightVector(6, 0)).value == 0);
}

TEST_CASE("idealness is closed under minors") {
  std::mt19937 rng(31);
  int ideal_seen = 0;
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 4 + static_cast<int>(rng() % 3);
    const auto c = random_clutter(rng, n, 3 + static_cast<int>(rng() % 4));
    if (!is_ideal(c).integral) continue;
    ++ideal_seen;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      MinorSpec s;
      for (int i = 0, x = static_cast<int>(code); i < n; ++i, x /= 3) {
        if (x % 3 == 1) s.deleted |= bit(i);
        if (x % 3 == 2) s.contracted |= bit(i);
      }
      CHECK(is_ideal(minor(c, s)).integral);
    }
  }
  CHECK(ideal_seen > 0);
}

TEST_CASE("minimally non-ideal clutters have fractional points strictly inside the cube") {
  for (auto b : {Builtin::Delta3, Builtin::C5sq}) {
    const auto cert = is_ideal(builtin(b));
    REQUIRE(cert.fractional.has_value());
    for (const auto& x : cert.fractional->x) {
      CHECK(x > 0);
      CHECK(x < 1);
    }
  }
}

TEST_CASE("packing property and MFMC refuter") {
  const auto q6 = builtin(Builtin::Q6);
  const auto bad = has_packing_property(q6);
  REQUIRE(bad.has_value());
  CHECK_FALSE(packs(minor(q6, *bad)));
  CHECK_FALSE(has_packing_property(make_clutter(4, {{1, 2}, {3, 4}})).has_value());

  const auto v = mfmc_check(q6, 1, false);
  REQUIRE(v.has_value());
  CHECK(v->tau > v->nu);
  CHECK_FALSE(mfmc_check(make_clutter(5, {{1, 2}, {3}, {4, 5}}), 2).has_value());

  const auto ex = mult(Subspace::span(Field::get(4), 3, {{1, 1, 0}, {1, 0, 1}}));
  Budget big = default_budget();
  const auto w = mfmc_check(ex, 1, false, big);
  REQUIRE(w.has_value());
  CHECK(tau(ex, w->w) == w->tau);
  CHECK(nu(ex, w->w) == w->nu);
  CHECK(w->tau > w->nu);

  // disjoint-support space over GF(3): every minor packs
  const auto ds = mult(Subspace::span(Field::get(3), 3, {{1, 1, 0}, {0, 0, 1}}));
  CHECK_FALSE(has_packing_property(ds).has_value());
}

TEST_CASE("large weights act as contraction") {
  const auto d3 = builtin(Builtin::Delta3);
  const auto p = product(d3, make_clutter(1, {{1}}));  // each member gains element 4
  WeightVector w{1, 1, 1, large_weight(p, 1)};
  CHECK(tau(p, w) == 2);
  CHECK(nu(p, w) == 1);
}

TEST_CASE("rational formatting") {
  CHECK(to_string(Rational(1, 2)) == "1/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
}
