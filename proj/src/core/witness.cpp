#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "error.hpp"
#include "verify.hpp"

namespace clutterforge {

namespace {

Json point_json(const Point& p) {
  Json a = Json::array();
  for (Element e : p) a.push_back(static_cast<int>(e));
  return a;
}

Point scaled(const Field& f, Element lambda, const Point& v) {
  Point out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(lambda, v[i]);
  return out;
}

Point added(const Field& f, const Point& u, const Point& v) {
  Point out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.add(u[i], v[i]);
  return out;
}

void check_triple(const Subspace& s, const Point& a, const Point& b, const Point& c, int i, int j, int k) {
  const int n = s.n();
  for (const Point* p : {&a, &b, &c})
    if (static_cast<int>(p->size()) != n || !s.contains(*p)) fail(Errc::PreconditionViolated, "a, b, c must be points of S");
  if (a == b || b == c || a == c) fail(Errc::PreconditionViolated, "a, b, c must be distinct");
  for (int x : {i, j, k})
    if (x < 0 || x >= n) fail(Errc::PreconditionViolated, "coordinate out of range");
  if (i == j || j == k || i == k) fail(Errc::PreconditionViolated, "i, j, k must be distinct");
  if (!(a[i] == b[i] && b[i] != c[i]) || !(b[j] == c[j] && c[j] != a[j]) || !(c[k] == a[k] && a[k] != b[k]))
    fail(Errc::PreconditionViolated, "a, b, c do not satisfy the triple condition at i, j, k");
}

Json element_list_json(const std::vector<GroundElement>& es) {
  Json a = Json::array();
  for (const auto& e : es) a.push_back(element_label(e));
  return a;
}

// Every point of S whose support is exactly `coords`.
std::vector<Point> points_with_support(const std::vector<Point>& points, Mask coords) {
  std::vector<Point> out;
  for (const auto& p : points)
    if (support_mask(p) == coords) out.push_back(p);
  return out;
}

void finish_chain(WitnessChain& w, const Clutter& host) {
  w.result = replay(host, w.steps);
  auto iso = is_isomorphic(builtin(w.target), w.result);
  if (!iso)
    fail(Errc::VerificationFailed, std::string("replayed chain is not ") + builtin_name(w.target) + ": " + w.result.to_text());
  w.iso = *iso;
}

bool even_order(int q) { return q % 2 == 0; }

}  // namespace

Json WitnessChain::to_json() const {
  Json steps_json = Json::array();
  for (const auto& st : steps)
    steps_json.push_back({{"op", st.op == ChainStep::Op::Delete ? "delete" : "contract"},
                          {"elements", element_list_json(st.elements)},
                          {"note", st.note}});
  Json members = Json::array();
  for (Mask m : result.members()) {
    Json mem = Json::array();
    for (int e : mask_elements(m)) mem.push_back(element_label(result.ground()[e]));
    members.push_back(mem);
  }
  return {{"kind", "witness_chain"},
          {"target", builtin_name(target)},
          {"instance", instance},
          {"steps", steps_json},
          {"choices", choices},
          {"result", members}};
}

Clutter replay(const Clutter& host, const std::vector<ChainStep>& steps) {
  Clutter c = host;
  for (const auto& st : steps) {
    Mask m = 0;
    for (const auto& e : st.elements) {
      const int idx = c.index_of(e);
      if (idx < 0) fail(Errc::VerificationFailed, "chain names missing element " + element_label(e));
      m |= bit(idx);
    }
    c = st.op == ChainStep::Op::Delete ? minor(c, {m, 0}) : minor(c, {0, m});
  }
  return c;
}

std::optional<Point> triple_condition_probe(const Subspace& s, const Point& a, const Point& b, const Point& c, int i,
                                            int j, int k) {
  check_triple(s, a, b, c, i, j, k);
  for (const auto& d : s.enumerate_points()) {
    if (d == a || d == b || d == c) continue;
    bool inside = true;
    for (int l = 0; l < s.n() && inside; ++l) inside = d[l] == a[l] || d[l] == b[l] || d[l] == c[l];
    if (!inside) continue;
    if ((d[i] == c[i]) + (d[j] == a[j]) + (d[k] == b[k]) >= 2) return d;
  }
  return std::nullopt;
}

WitnessChain triple_delta3_chain(const Subspace& s, const Point& a, const Point& b, const Point& c, int i, int j,
                                 int k) {
  if (auto d = triple_condition_probe(s, a, b, c, i, j, k))
    fail(Errc::PreconditionViolated, "the triple has a fourth point d; no Delta3 from this triple");
  const Clutter host = mult(s);
  WitnessChain w;
  w.target = Builtin::Delta3;
  w.instance = Json::parse(s.to_json());
  ChainStep restrict_step{ChainStep::Op::Delete, {}, "keep only the values taken by a, b, c"};
  ChainStep outside_step{ChainStep::Op::Contract, {}, "contract the values at coordinates other than i, j, k"};
  for (int l = 0; l < s.n(); ++l) {
    std::set<Element> vals{a[l], b[l], c[l]};
    for (int v = 0; v < s.q(); ++v) {
      const GroundElement e{l, v};
      if (!vals.count(static_cast<Element>(v))) restrict_step.elements.push_back(e);
      else if (l != i && l != j && l != k) outside_step.elements.push_back(e);
    }
  }
  w.steps = {restrict_step, outside_step,
             {ChainStep::Op::Contract, {{i, c[i]}, {j, a[j]}, {k, b[k]}}, "contract c_i, a_j, b_k"}};
  w.choices = {{"a", point_json(a)}, {"b", point_json(b)}, {"c", point_json(c)}, {"ijk", {i + 1, j + 1, k + 1}}};
  finish_chain(w, host);
  return w;
}

WitnessChain delta3_witness_u24(const Subspace& s) {
  if (!even_order(s.q())) fail(Errc::WrongField, "the U24 construction needs characteristic 2");
  if (s.n() != 4 || !matroid_isomorphism(target_matroid(MatroidTarget::U24), matroid_of(s)))
    fail(Errc::WrongShape, "Matroid(S) is not U24");
  const Field& f = s.field();
  const auto points = s.enumerate_points();
  // generators normalized to (1,0,x,y) and (0,1,z,w)
  auto find = [&](Element e0, Element e1) {
    for (const auto& p : points)
      if (p[0] == e0 && p[1] == e1) return p;
    fail(Errc::Internal, "normalized generator missing");
  };
  const Point v1 = find(1, 0), v2 = find(0, 1);
  const Element x = v1[2], z = v2[2];
  const Point a = scaled(f, f.neg(f.mul(f.inv(x), z)), v1);
  const Point b = v2;
  const Point c = added(f, a, b);
  WitnessChain w = triple_delta3_chain(s, a, b, c, 2, 1, 0);
  w.choices["construction"] = "U24";
  return w;
}

WitnessChain delta3_witness_k4e(const Subspace& s) {
  if (!even_order(s.q()) || s.q() < 4) fail(Errc::WrongField, "the K4/e construction needs q = 2^k >= 4");
  if (s.n() != 5) fail(Errc::WrongShape, "Matroid(S) is not that of K4/e");
  const auto pi = matroid_isomorphism(target_matroid(MatroidTarget::MK4e), matroid_of(s));
  if (!pi) fail(Errc::WrongShape, "Matroid(S) is not that of K4/e");
  const Field& f = s.field();
  const auto& p = *pi;
  const auto points = s.enumerate_points();
  auto with_support = [&](std::initializer_list<int> target_elems, int normalize) {
    Mask m = 0;
    for (int e : target_elems) m |= bit(p[e]);
    auto found = points_with_support(points, m);
    if (found.empty()) fail(Errc::Internal, "fundamental circuit vector missing");
    const Point v = found.front();
    return normalize < 0 ? v : scaled(f, f.inv(v[p[normalize]]), v);
  };
  // fundamental circuits {1,4,5}, {2,4}, {3,5} for the spanning tree {4,5}
  const Point v1 = with_support({0, 3, 4}, 0);
  const Point v2 = with_support({1, 3}, 1);
  Point v3 = with_support({2, 4}, -1);
  const Element x = v1[p[3]], y = v1[p[4]], z = v2[p[3]];
  Element lambda = 1;
  while (f.mul(lambda, v3[p[4]]) == z) ++lambda;
  v3 = scaled(f, lambda, v3);
  const Element w5 = v3[p[4]];
  const Point a = scaled(f, z, v1), b = scaled(f, w5, v1);
  const Point c = added(f, scaled(f, x, v2), scaled(f, y, v3));
  WitnessChain w = triple_delta3_chain(s, a, b, c, p[2], p[4], p[3]);
  w.choices["construction"] = "K4/e";
  Json map = Json::array();
  for (int e : p) map.push_back(e + 1);
  w.choices["edge_to_coordinate"] = map;
  return w;
}

std::vector<Element> zero_sum_scaling(const Subspace& s) {
  const int n = s.n();
  if (n < 2) fail(Errc::WrongShape, "A_n needs n >= 2");
  const CircuitMatroid m = matroid_of(s);
  std::vector<Mask> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back(bit(i) | bit(j));
  std::sort(pairs.begin(), pairs.end());
  auto circuits = m.circuits();
  std::sort(circuits.begin(), circuits.end());
  if (circuits != pairs) fail(Errc::WrongShape, "Matroid(S) is not that of A_n");
  const Field& f = s.field();
  const auto points = s.enumerate_points();
  std::vector<Element> lambda(n, 1);
  for (int i = 1; i < n; ++i) {
    const auto u = points_with_support(points, bit(0) | bit(i));
    lambda[i] = f.neg(f.div(u.front()[0], u.front()[i]));
  }
  for (const auto& row : s.basis()) {
    Element sum = 0;
    for (int i = 0; i < n; ++i) sum = f.add(sum, f.mul(lambda[i], row[i]));
    if (sum != 0) fail(Errc::VerificationFailed, "coordinate scaling does not reach the zero-sum space");
  }
  return lambda;
}

namespace {

Element field_sum(const Field& f, const Point& x) {
  Element s = 0;
  for (Element e : x) s = f.add(s, e);
  return s;
}

}  // namespace

WitnessChain c5sq_witness(const Subspace& s, const C5sqOptions& options) {
  const int q = s.q();
  if (!even_order(q) || q <= 4) fail(Errc::WrongField, "the C5sq construction needs q = 2^k > 4");
  if (s.n() != 3) fail(Errc::WrongShape, "Matroid(S) is not that of A3");
  const auto lambda = zero_sum_scaling(s);
  const Field& f = s.field();
  std::mt19937_64 rng(options.seed.value_or(0));
  auto pick = [&](const std::set<Element>& avoid) {
    std::vector<Element> pool;
    for (int v = 0; v < q; ++v)
      if (!avoid.count(static_cast<Element>(v))) pool.push_back(static_cast<Element>(v));
    if (!options.seed) return pool.front();
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };

  Point alpha;
  if (options.alpha) {
    alpha = *options.alpha;
    if (static_cast<int>(alpha.size()) != 3 || s.contains(alpha)) fail(Errc::PreconditionViolated, "alpha must be a point outside S");
  } else if (options.seed) {
    do {
      alpha = {static_cast<Element>(rng() % q), static_cast<Element>(rng() % q), static_cast<Element>(rng() % q)};
    } while (s.contains(alpha));
  } else {
    for (int code = 0; alpha.empty(); ++code) {
      Point x{static_cast<Element>(code / (q * q)), static_cast<Element>(code / q % q), static_cast<Element>(code % q)};
      if (!s.contains(x)) alpha = x;
    }
  }
  Point al(3);  // alpha in the zero-sum coordinates
  for (int i = 0; i < 3; ++i) al[i] = f.mul(lambda[i], alpha[i]);
  const Element sigma = field_sum(f, al);
  if (sigma == 0) fail(Errc::Internal, "alpha outside S but sigma = 0");

  const Element a = pick({al[0], f.add(al[0], sigma)});
  const Element b = pick({al[0], f.add(al[0], sigma), a, f.add(a, sigma)});
  const Element beta1[3] = {a, b, f.add(f.add(a, b), al[0])};
  auto beta = [&](int i, int j) { return f.add(f.add(beta1[j], al[0]), al[i]); };  // beta_i^{j+1}
  auto plus_sigma = [&](Element v) { return f.add(v, sigma); };

  // the seven kept elements, in zero-sum coordinates, in display order
  const std::vector<GroundElement> kept_t = {
      {0, beta(0, 0)},             {1, plus_sigma(beta(1, 0))}, {2, beta(2, 0)},
      {0, plus_sigma(beta(0, 0))}, {2, plus_sigma(beta(2, 2))}, {1, beta(1, 1)},
      {1, plus_sigma(beta(1, 1))}};
  auto to_s = [&](GroundElement e) { return GroundElement{e.part, f.div(static_cast<Element>(e.value), lambda[e.part])}; };
  std::vector<GroundElement> kept;
  for (const auto& e : kept_t) kept.push_back(to_s(e));

  const Clutter host = mult(s);
  WitnessChain w;
  w.target = Builtin::C5sq;
  w.instance = Json::parse(s.to_json());
  ChainStep localize{ChainStep::Op::Contract, {}, "localize at alpha"};
  for (int i = 0; i < 3; ++i) localize.elements.push_back({i, alpha[i]});
  ChainStep trim{ChainStep::Op::Delete, {}, "keep seven elements"};
  for (int i = 0; i < 3; ++i)
    for (int v = 0; v < q; ++v) {
      const GroundElement e{i, v};
      if (v != alpha[i] && std::find(kept.begin(), kept.end(), e) == kept.end()) trim.elements.push_back(e);
    }
  w.steps = {localize, trim, {ChainStep::Op::Contract, {kept[5], kept[6]}, "contract the two kept elements of part 2 in G_2"}};

  const Clutter before = replay(host, {localize, trim});
  std::vector<std::vector<int>> display;
  for (Mask m : before.members()) {
    std::vector<int> row;
    for (const auto& e : kept) row.push_back((m >> before.index_of(e)) & 1);
    display.push_back(row);
  }
  std::sort(display.begin(), display.end(), std::greater<>());
  Json labels = Json::array();
  for (const auto& e : kept) labels.push_back(element_label(e));
  w.choices = {{"alpha", point_json(alpha)},
               {"alpha_normalized", point_json(al)},
               {"scaling", point_json(lambda)},
               {"sigma", sigma},
               {"a", a},
               {"b", b},
               {"display_columns", labels},
               {"display", display}};
  finish_chain(w, host);
  return w;
}

Json LocalizationProfile::to_json(const Field& f) const {
  auto sym = [&](Element e) { return f.symbol(e); };
  Json comps = Json::array();
  for (const auto& c : components) {
    Json beta_json = Json::array();
    for (Element e : c.beta) beta_json.push_back(sym(e));
    Json edges_json = Json::array();
    for (const auto& [u, v] : c.edges) edges_json.push_back({element_label(u), element_label(v)});
    comps.push_back({{"beta", beta_json}, {"edges", edges_json}});
  }
  Json singles = Json::array();
  for (const auto& e : singletons) singles.push_back(element_label(e));
  Json res = Json::array();
  for (const auto& m : residual) res.push_back(element_list_json(m));
  Json alpha_json = Json::array();
  for (Element e : alpha) alpha_json.push_back(sym(e));
  return {{"alpha", alpha_json},     {"sigma", sym(sigma)},  {"scaling", point_json(scaling)},
          {"singletons", singles},   {"components", comps}, {"residual", res},
          {"members", member_count}};
}

LocalizationProfile localization_profile(const Subspace& s, const Point& alpha) {
  const int q = s.q(), n = s.n();
  if (!even_order(q)) fail(Errc::PreconditionViolated, "localization profile needs q = 2^k");
  if (static_cast<int>(alpha.size()) != n || s.contains(alpha)) fail(Errc::PreconditionViolated, "alpha must be a point outside S");
  std::vector<Element> lambda;
  try {
    lambda = zero_sum_scaling(s);
  } catch (const Error& e) {
    if (e.code() != Errc::WrongShape) throw;
    fail(Errc::PreconditionViolated, e.what());
  }
  const Field& f = s.field();
  LocalizationProfile prof;
  prof.scaling = lambda;
  prof.alpha.resize(n);
  for (int i = 0; i < n; ++i) prof.alpha[i] = f.mul(lambda[i], alpha[i]);
  prof.sigma = field_sum(f, prof.alpha);
  const Element sigma = prof.sigma;
  const Clutter loc = localization(Subspace::zero_sum(s.field_ptr(), n), prof.alpha);
  prof.member_count = loc.members().size();
  auto mismatch = [](const std::string& what) { fail(Errc::VerificationFailed, "localization profile: " + what); };

  std::vector<std::pair<int, int>> edges;  // ground indices
  for (Mask m : loc.members()) {
    const auto es = mask_elements(m);
    if (es.size() == 1) prof.singletons.push_back(loc.ground()[es[0]]);
    else if (es.size() == 2) edges.emplace_back(es[0], es[1]);
    else {
      std::vector<GroundElement> mem;
      for (int e : es) mem.push_back(loc.ground()[e]);
      prof.residual.push_back(mem);
    }
  }
  std::vector<GroundElement> expected_singletons;
  for (int i = 0; i < n; ++i) expected_singletons.push_back({i, f.add(prof.alpha[i], sigma)});
  std::sort(prof.singletons.begin(), prof.singletons.end());
  if (prof.singletons != expected_singletons) mismatch("size-1 members differ from {alpha_i + sigma}");

  // components of the size-2 graph
  std::vector<int> parent(loc.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (auto [u, v] : edges) parent[root(u)] = root(v);
  std::map<int, std::vector<std::pair<int, int>>> by_root;
  for (auto e : edges) by_root[root(e.first)].push_back(e);
  if (static_cast<int>(by_root.size()) != q / 2 - 1)
    mismatch(std::to_string(by_root.size()) + " components instead of " + std::to_string(q / 2 - 1));

  for (const auto& [r, comp_edges] : by_root) {
    std::set<GroundElement> verts;
    for (auto [u, v] : comp_edges) verts.insert(loc.ground()[u]), verts.insert(loc.ground()[v]);
    std::vector<Element> first;
    for (const auto& e : verts)
      if (e.part == 0) first.push_back(static_cast<Element>(e.value));
    if (first.size() != 2 || f.add(first[0], first[1]) != sigma) mismatch("part 1 of a component is not {beta, beta + sigma}");
    LocalizationComponent comp;
    const Element b1 = std::min(first[0], first[1]);
    for (int i = 0; i < n; ++i) comp.beta.push_back(f.add(f.add(b1, prof.alpha[0]), prof.alpha[i]));
    std::set<GroundElement> want_verts;
    std::set<std::pair<GroundElement, GroundElement>> want_edges, got_edges;
    for (int i = 0; i < n; ++i) {
      want_verts.insert({i, comp.beta[i]});
      want_verts.insert({i, f.add(comp.beta[i], sigma)});
      for (int k = 0; k < n; ++k)
        if (i != k) {
          GroundElement x{i, comp.beta[i]}, y{k, f.add(comp.beta[k], sigma)};
          want_edges.insert(std::minmax(x, y));
        }
    }
    for (auto [u, v] : comp_edges) got_edges.insert(std::minmax(loc.ground()[u], loc.ground()[v]));
    if (verts != want_verts) mismatch("component vertex set differs from {beta_i, beta_i + sigma}");
    if (got_edges != want_edges) mismatch("component is not complete bipartite minus a perfect matching");
    comp.edges.assign(got_edges.begin(), got_edges.end());
    prof.components.push_back(std::move(comp));
  }
  return prof;
}

SeriesPair series_extension_pair(const Subspace& s, const Budget& budget) {
  const CircuitMatroid m = matroid_of(s);
  SeriesPair out;
  for (const auto& cls : m.series_classes())
    if (cls.size() >= 2) {
      out.series_class = cls;
      break;
    }
  if (out.series_class.empty()) fail(Errc::NoSeriesPair, "Matroid(S) has no two elements in series");
  out.dropped = out.series_class.back();
  const Subspace projected = project(s, {out.dropped});
  out.ideal = is_ideal(mult(s), budget).integral;
  out.ideal_projection = is_ideal(mult(projected), budget).integral;
  if (out.ideal != out.ideal_projection)
    fail(Errc::VerificationFailed, "dropping a series element changed idealness of " + s.describe());
  return out;
}

Json ReplicationReport::to_json() const {
  Json j{{"packing_property", packing_property},
         {"disjoint_support_basis", disjoint_support_basis},
         {"minimally_nonpacking", minimally_nonpacking},
         {"notes", notes}};
  j["ideal"] = ideal ? Json(*ideal) : Json(nullptr);
  j["tau"] = tau ? Json(*tau) : Json(nullptr);
  j["isomorphic_to_Q6"] = isomorphic_to_q6 ? Json(*isomorphic_to_q6) : Json(nullptr);
  return j;
}

ReplicationReport replication_tau2_report(const Subspace& s, const Budget& budget) {
  const Clutter c = mult(s);
  ReplicationReport r;
  r.nonpacking_minor = has_packing_property(c, budget);
  r.packing_property = !r.nonpacking_minor;
  r.disjoint_support_basis = disjoint_support_basis(s).has_value();
  if (r.packing_property && !r.disjoint_support_basis)
    fail(Errc::VerificationFailed, "packing property without a disjoint-support basis for " + s.describe());
  if (r.packing_property) r.notes.push_back("packing property holds; disjoint-support basis present");
  try {
    r.ideal = is_ideal(c, budget).integral;
  } catch (const Error& e) {
    if (e.code() != Errc::TooLarge && e.code() != Errc::BudgetExceeded) throw;
    r.notes.push_back("idealness past the polyhedral budget");
  }
  if (r.packing_property) return r;
  // minimally non-packing: C itself fails, every single-element minor has the packing property
  bool minimal = !packs(c, budget);
  for (int e = 0; e < c.size() && minimal; ++e)
    minimal = !has_packing_property(minor(c, {bit(e), 0}), budget) && !has_packing_property(minor(c, {0, bit(e)}), budget);
  r.minimally_nonpacking = minimal;
  if (!minimal) {
    r.notes.push_back("not minimally non-packing; covering-number branch inapplicable");
    return r;
  }
  if (!r.ideal || !*r.ideal) {
    r.notes.push_back("minimally non-packing but not known to be ideal; covering-number branch inapplicable");
    return r;
  }
  r.tau = tau(c, unit_weights(c), budget);
  r.isomorphic_to_q6 = is_isomorphic(c, builtin(Builtin::Q6), budget).has_value();
  if (*r.tau != 2 || !*r.isomorphic_to_q6)
    fail(Errc::VerificationFailed, "ideal minimally non-packing mult(S) without tau = 2 and Q6 shape");
  r.notes.push_back("ideal, minimally non-packing, tau = 2, isomorphic to Q6");
  return r;
}

}  // namespace clutterforge
