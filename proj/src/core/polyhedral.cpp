#include "polyhedral.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_set>

#include "error.hpp"

namespace clutterforge {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

int rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int r = 0;
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

namespace {

struct Overflow {};

// Integer arithmetic for ray coordinates: int64 with overflow detection,
// or arbitrary precision.
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline mp::cpp_int mul(const mp::cpp_int& a, const mp::cpp_int& b) { return a * b; }
inline mp::cpp_int add(const mp::cpp_int& a, const mp::cpp_int& b) { return a + b; }
inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline mp::cpp_int gcd_of(const mp::cpp_int& a, const mp::cpp_int& b) { return mp::gcd(a, b); }

using Bits = std::vector<std::uint64_t>;

bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

int count_bits(const Bits& a) {
  int c = 0;
  for (auto w : a) c += std::popcount(w);
  return c;
}

// Double description on the cone {(x0,x) : x >= 0, x0 >= 0, M x - x0 1 >= 0}.
// Constraint k < d+1 is a bound (k = 0 for x0), constraint d+1+j is member j.
template <class T>
std::vector<std::vector<T>> cone_rays(const Clutter& c, const Budget& budget) {
  const int d = c.size();
  const int dim = d + 1;
  const auto& members = c.members();
  const std::size_t ncons = dim + members.size();
  const std::size_t words = (ncons + 63) / 64;

  struct Ray {
    std::vector<T> v;
    Bits zero;
  };
  std::vector<Ray> rays;
  for (int i = 0; i < dim; ++i) {
    Ray r{std::vector<T>(dim, T(0)), Bits(words, 0)};
    r.v[i] = 1;
    for (int k = 0; k < dim; ++k)
      if (k != i) r.zero[k / 64] |= std::uint64_t{1} << (k % 64);
    rays.push_back(std::move(r));
  }

  std::uint64_t work = 0;
  for (std::size_t j = 0; j < members.size(); ++j) {
    const std::size_t con = dim + j;
    const auto elems = mask_elements(members[j]);
    auto eval = [&](const std::vector<T>& v) {
      T s = -v[0];
      for (int e : elems) s = add(s, v[1 + e]);
      return s;
    };
    std::vector<T> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = eval(rays[r].v);
      if (val[r] > 0) pos.push_back(r);
      else if (val[r] < 0) neg.push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (val[r] == 0) rays[r].zero[con / 64] |= std::uint64_t{1} << (con % 64);
      continue;
    }
    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        if (++work > budget.search_nodes) fail(Errc::BudgetExceeded, "vertex enumeration budget exhausted");
        Bits common(words);
        for (std::size_t w = 0; w < words; ++w) common[w] = rays[p].zero[w] & rays[n].zero[w];
        if (count_bits(common) < dim - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != n && subset_of(common, rays[r].zero)) adjacent = false;
        if (!adjacent) continue;
        Ray fresh{std::vector<T>(dim), std::move(common)};
        const T a = val[p], b = -val[n];
        T g = 0;
        for (int i = 0; i < dim; ++i) {
          fresh.v[i] = add(mul(a, rays[n].v[i]), mul(b, rays[p].v[i]));
          g = gcd_of(g, fresh.v[i]);
        }
        if (g > 1)
          for (auto& x : fresh.v) x /= g;
        fresh.zero[con / 64] |= std::uint64_t{1} << (con % 64);
        next.push_back(std::move(fresh));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r] < 0) continue;
      if (val[r] == 0) rays[r].zero[con / 64] |= std::uint64_t{1} << (con % 64);
      next.push_back(std::move(rays[r]));
    }
    rays = std::move(next);
  }
  std::vector<std::vector<T>> out;
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

template <class T>
std::vector<RationalVector> points_from_rays(const std::vector<std::vector<T>>& rays) {
  std::vector<RationalVector> out;
  for (const auto& v : rays) {
    if (v[0] == 0) continue;
    RationalVector x;
    for (std::size_t i = 1; i < v.size(); ++i) x.emplace_back(mp::cpp_int(v[i]), mp::cpp_int(v[0]));
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<RationalVector> extreme_points(const Clutter& c, const Budget& budget) {
  if (c.size() > static_cast<int>(budget.vertex_enum_ground))
    fail(Errc::TooLarge, "vertex enumeration limited to |V| <= " + std::to_string(budget.vertex_enum_ground) + " (got " +
                             std::to_string(c.size()) + ")");
  try {
    return points_from_rays(cone_rays<std::int64_t>(c, budget));
  } catch (const Overflow&) {
    return points_from_rays(cone_rays<mp::cpp_int>(c, budget));
  }
}

FractionalPoint tight_system(const Clutter& c, const RationalVector& x) {
  FractionalPoint fp{x, {}, {}};
  for (std::size_t j = 0; j < c.members().size(); ++j) {
    Rational s = 0;
    for (int e : mask_elements(c.members()[j])) s += x[e];
    if (s == 1) fp.tight_members.push_back(static_cast<int>(j));
  }
  for (int v = 0; v < c.size(); ++v)
    if (x[v] == 0) fp.tight_bounds.push_back(v);
  return fp;
}

bool is_extreme_point(const Clutter& c, const RationalVector& x) {
  if (static_cast<int>(x.size()) != c.size()) return false;
  for (const auto& xi : x)
    if (xi < 0) return false;
  for (Mask m : c.members()) {
    Rational s = 0;
    for (int e : mask_elements(m)) s += x[e];
    if (s < 1) return false;
  }
  const auto fp = tight_system(c, x);
  std::vector<RationalVector> rows;
  for (int j : fp.tight_members) {
    RationalVector r(c.size(), 0);
    for (int e : mask_elements(c.members()[j])) r[e] = 1;
    rows.push_back(std::move(r));
  }
  for (int v : fp.tight_bounds) {
    RationalVector r(c.size(), 0);
    r[v] = 1;
    rows.push_back(std::move(r));
  }
  return rank(std::move(rows)) == c.size();
}

IdealnessCertificate is_ideal(const Clutter& c, const Budget& budget) {
  IdealnessCertificate cert;
  const auto pts = extreme_points(c, budget);
  cert.extreme_point_count = pts.size();
  for (const auto& x : pts) {
    const bool integral = std::all_of(x.begin(), x.end(), [](const Rational& r) { return mp::denominator(r) == 1; });
    if (integral) continue;
    ++cert.fractional_count;
    if (!cert.fractional) cert.fractional = tight_system(c, x);
  }
  cert.integral = cert.fractional_count == 0;
  return cert;
}

WeightVector unit_weights(const Clutter& c) { return WeightVector(c.size(), 1); }

namespace {

void check_weights(const Clutter& c, const WeightVector& w, bool allow_infinite) {
  if (static_cast<int>(w.size()) != c.size()) fail(Errc::DimensionMismatch, "one weight per ground element required");
  for (Weight x : w) {
    if (x < 0) fail(Errc::PreconditionViolated, "weights must be nonnegative");
    if (x == kInfinity && !allow_infinite) fail(Errc::PreconditionViolated, "infinite weight not allowed here");
  }
}

Weight sat_add(Weight a, Weight b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) return kInfinity;
  return r;
}

struct CoverSearch {
  const std::vector<Mask>& members;  // restricted to finite-weight elements
  const WeightVector& w;
  const Budget& budget;
  std::uint64_t nodes = 0;
  Weight best = kInfinity;
  Mask best_set = 0;

  Weight lower_bound(Mask chosen, Mask excluded) const {
    Mask used = 0;
    Weight lb = 0;
    for (Mask m : members) {
      if (m & chosen) continue;
      const Mask avail = m & ~excluded;
      if (avail & used) continue;
      used |= avail;
      Weight lo = kInfinity;
      for (int e : mask_elements(avail)) lo = std::min(lo, w[e]);
      lb = sat_add(lb, lo);
    }
    return lb;
  }

  void run(Mask chosen, Mask excluded, Weight cost) {
    if (++nodes > budget.search_nodes) fail(Errc::BudgetExceeded, "cover search budget exhausted");
    if (cost >= best) return;
    // most constrained uncovered member
    Mask pick = 0;
    int fewest = 65;
    for (Mask m : members) {
      if (m & chosen) continue;
      const Mask avail = m & ~excluded;
      const int k = std::popcount(avail);
      if (k == 0) return;
      if (k < fewest) {
        fewest = k;
        pick = avail;
      }
    }
    if (fewest == 65) {
      best = cost;
      best_set = chosen;
      return;
    }
    if (sat_add(cost, lower_bound(chosen, excluded)) >= best) return;
    auto elems = mask_elements(pick);
    std::sort(elems.begin(), elems.end(), [&](int a, int b) { return w[a] < w[b]; });
    Mask ex = excluded;
    for (int e : elems) {
      run(chosen | bit(e), ex, cost + w[e]);
      ex |= bit(e);
    }
  }
};

struct CoverResult {
  Weight value;
  Mask set;
};

CoverResult cover(const Clutter& c, const WeightVector& w, const Budget& budget) {
  check_weights(c, w, true);
  Mask finite = 0, free = 0;
  for (int v = 0; v < c.size(); ++v) {
    if (w[v] != kInfinity) finite |= bit(v);
    if (w[v] == 0) free |= bit(v);
  }
  std::vector<Mask> rest;
  for (Mask m : c.members()) {
    if (m & free) continue;
    if (!(m & finite)) return {kInfinity, 0};
    rest.push_back(m & finite);
  }
  rest = minimal_sets(std::move(rest));
  CoverSearch s{rest, w, budget};
  s.run(0, 0, 0);
  if (s.best == kInfinity) return {kInfinity, 0};
  return {s.best, s.best_set | free};
}

struct PackSearch {
  std::vector<Mask> members{};
  std::vector<Weight> residual{};
  std::vector<Mask> covers{};
  Weight target;  // stop once reached
  const Budget& budget;
  std::uint64_t nodes = 0;
  Weight best = 0;
  std::vector<Weight> y{}, best_y{};

  Weight bound() const {
    Weight b = kInfinity;
    for (Mask x : covers) {
      Weight s = 0;
      for (int e : mask_elements(x)) s += residual[e];
      b = std::min(b, s);
    }
    return b;
  }

  bool run(std::size_t i, Weight value) {
    if (++nodes > budget.search_nodes) fail(Errc::BudgetExceeded, "packing search budget exhausted");
    if (value > best) {
      best = value;
      best_y = y;
      if (best >= target) return true;
    }
    if (i == members.size()) return false;
    if (value + bound() <= best) return false;
    Weight cap = kInfinity;
    for (int e : mask_elements(members[i])) cap = std::min(cap, residual[e]);
    for (Weight k = cap; k >= 0; --k) {
      for (int e : mask_elements(members[i])) residual[e] -= k;
      y[i] = k;
      const bool done = run(i + 1, value + k);
      for (int e : mask_elements(members[i])) residual[e] += k;
      y[i] = 0;
      if (done) return true;
    }
    return false;
  }
};

}  // namespace

Weight tau(const Clutter& c, const WeightVector& w, const Budget& budget) { return cover(c, w, budget).value; }

std::optional<Mask> min_cover(const Clutter& c, const WeightVector& w, const Budget& budget) {
  const auto r = cover(c, w, budget);
  if (r.value == kInfinity) return std::nullopt;
  return r.set;
}

std::vector<Weight> max_packing(const Clutter& c, const WeightVector& w, const Budget& budget) {
  check_weights(c, w, false);
  const auto& ms = c.members();
  if (std::any_of(ms.begin(), ms.end(), [](Mask m) { return m == 0; }))
    fail(Errc::PreconditionViolated, "a clutter with the empty member packs unboundedly");
  const auto opt = cover(c, w, budget);
  PackSearch s{.residual = w, .target = opt.value, .budget = budget};
  Mask zero = 0;
  for (int v = 0; v < c.size(); ++v)
    if (w[v] == 0) zero |= bit(v);
  std::vector<std::size_t> usable;
  for (std::size_t j = 0; j < ms.size(); ++j)
    if (!(ms[j] & zero)) usable.push_back(j);
  // members through scarce elements first
  std::stable_sort(usable.begin(), usable.end(), [&](std::size_t a, std::size_t b) {
    Weight ca = kInfinity, cb = kInfinity;
    for (int e : mask_elements(ms[a])) ca = std::min(ca, w[e]);
    for (int e : mask_elements(ms[b])) cb = std::min(cb, w[e]);
    return ca < cb;
  });
  for (std::size_t j : usable) s.members.push_back(ms[j]);
  s.covers.push_back(opt.set);
  s.covers.push_back(c.full());
  s.y.assign(s.members.size(), 0);
  s.best_y = s.y;
  s.run(0, 0);
  std::vector<Weight> y(ms.size(), 0);
  for (std::size_t k = 0; k < usable.size(); ++k) y[usable[k]] = s.best_y[k];
  return y;
}

Weight nu(const Clutter& c, const WeightVector& w, const Budget& budget) {
  check_weights(c, w, false);
  const auto& ms = c.members();
  if (std::any_of(ms.begin(), ms.end(), [](Mask m) { return m == 0; })) return kInfinity;
  const auto y = max_packing(c, w, budget);
  return std::accumulate(y.begin(), y.end(), Weight{0});
}

LinearOptimum tau_star(const Clutter& c, const WeightVector& w, const Budget& budget) {
  check_weights(c, w, false);
  const auto pts = extreme_points(c, budget);
  if (pts.empty()) fail(Errc::PreconditionViolated, "Q(C) is empty");
  LinearOptimum best;
  bool first = true;
  for (const auto& x : pts) {
    Rational v = 0;
    for (int i = 0; i < c.size(); ++i) v += x[i] * w[i];
    if (first || v < best.value) {
      best = {v, x};
      first = false;
    }
  }
  return best;
}

LinearOptimum nu_star(const Clutter& c, const WeightVector& w) {
  check_weights(c, w, false);
  const auto& ms = c.members();
  if (std::any_of(ms.begin(), ms.end(), [](Mask m) { return m == 0; }))
    fail(Errc::PreconditionViolated, "fractional packing is unbounded with the empty member");
  // max 1.y  s.t.  sum_{C ni v} y_C + s_v = w_v ; tableau over y and slacks
  const int rows = c.size();
  const int vars = static_cast<int>(ms.size()) + rows;
  std::vector<RationalVector> t(rows, RationalVector(vars + 1, 0));
  std::vector<int> basis(rows);
  for (int v = 0; v < rows; ++v) {
    for (std::size_t j = 0; j < ms.size(); ++j)
      if (ms[j] & bit(v)) t[v][j] = 1;
    t[v][ms.size() + v] = 1;
    t[v][vars] = w[v];
    basis[v] = static_cast<int>(ms.size()) + v;
  }
  RationalVector obj(vars + 1, 0);  // reduced costs of the maximization
  for (std::size_t j = 0; j < ms.size(); ++j) obj[j] = 1;
  while (true) {
    int enter = -1;
    for (int j = 0; j < vars; ++j)
      if (obj[j] > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational ratio;
    for (int r = 0; r < rows; ++r) {
      if (t[r][enter] <= 0) continue;
      const Rational q = t[r][vars] / t[r][enter];
      if (leave < 0 || q < ratio || (q == ratio && basis[r] < basis[leave])) {
        leave = r;
        ratio = q;
      }
    }
    if (leave < 0) fail(Errc::Internal, "fractional packing LP unbounded");
    const Rational p = t[leave][enter];
    for (auto& x : t[leave]) x /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rational f = t[r][enter];
      for (int k = 0; k <= vars; ++k) t[r][k] -= f * t[leave][k];
    }
    const Rational f = obj[enter];
    for (int k = 0; k <= vars; ++k) obj[k] -= f * t[leave][k];
    basis[leave] = enter;
  }
  LinearOptimum out;
  out.primal.assign(ms.size(), 0);
  for (int r = 0; r < rows; ++r)
    if (basis[r] < static_cast<int>(ms.size())) out.primal[basis[r]] = t[r][vars];
  out.value = 0;
  for (const auto& y : out.primal) out.value += y;
  return out;
}

bool packs(const Clutter& c, const Budget& budget) {
  const auto w = unit_weights(c);
  return tau(c, w, budget) == nu(c, w, budget);
}

std::optional<MinorSpec> has_packing_property(const Clutter& c, const Budget& budget) {
  const int n = c.size();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= 3;
    if (total > budget.search_nodes) fail(Errc::BudgetExceeded, "packing-property sweep needs 3^|V| minors");
  }
  std::set<std::pair<int, std::vector<Mask>>> seen;
  for (std::uint64_t code = 0; code < total; ++code) {
    MinorSpec spec;
    std::uint64_t x = code;
    for (int i = 0; i < n; ++i, x /= 3) {
      if (x % 3 == 1) spec.deleted |= bit(i);
      else if (x % 3 == 2) spec.contracted |= bit(i);
    }
    const Clutter m = minor(c, spec);
    if (!seen.insert({m.size(), m.members()}).second) continue;
    if (!packs(m, budget)) return spec;
  }
  return std::nullopt;
}

Weight large_weight(const Clutter& c, Weight max_weight) { return 1 + std::max<Weight>(max_weight, 1) * c.size(); }

std::optional<MfmcViolation> mfmc_check(const Clutter& c, Weight max_weight, bool with_large, const Budget& budget) {
  if (max_weight < 0) fail(Errc::PreconditionViolated, "weight bound must be nonnegative");
  std::vector<Weight> alphabet(max_weight + 1);
  std::iota(alphabet.begin(), alphabet.end(), Weight{0});
  if (with_large) alphabet.push_back(large_weight(c, max_weight));
  const int n = c.size();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget.search_nodes / alphabet.size()) fail(Errc::BudgetExceeded, "weight sweep exceeds the budget");
    total *= alphabet.size();
  }
  WeightVector w(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int i = 0; i < n; ++i, x /= alphabet.size()) w[i] = alphabet[x % alphabet.size()];
    const Weight t = tau(c, w, budget);
    if (t == kInfinity) continue;
    const Weight v = nu(c, w, budget);
    if (v != t) return MfmcViolation{w, t, v};
  }
  return std::nullopt;
}

}  // namespace clutterforge
