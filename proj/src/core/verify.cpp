#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "error.hpp"

namespace clutterforge {

namespace {

bool is_budget_error(const Error& e) { return e.code() == Errc::BudgetExceeded || e.code() == Errc::TooLarge; }

Json budget_certificate(const Error& e) { return {{"kind", "budget"}, {"reason", e.what()}}; }

Json point_json(const Point& p) {
  Json a = Json::array();
  for (Element e : p) a.push_back(static_cast<int>(e));
  return a;
}

Json coords_json(const std::vector<int>& coords) {
  Json a = Json::array();
  for (int c : coords) a.push_back(c + 1);
  return a;
}

Json labels_json(const Clutter& c, Mask m) {
  Json a = Json::array();
  for (int e : mask_elements(m)) a.push_back(element_label(c.ground()[e]));
  return a;
}

Mask mask_from_labels(const Clutter& c, const Json& labels) {
  Mask m = 0;
  for (const auto& l : labels) {
    const int idx = c.index_of(parse_element_label(l.get<std::string>()));
    if (idx < 0) fail(Errc::VerificationFailed, "unknown element " + l.get<std::string>());
    m |= bit(idx);
  }
  return m;
}

Json rational_vector_json(const RationalVector& x) {
  Json a = Json::array();
  for (const auto& r : x) a.push_back(to_string(r));
  return a;
}

Json minor_json(const Clutter& c, Builtin target, const MinorWitness& w) {
  Json map = Json::array();
  for (int e : w.map) map.push_back(element_label(c.ground()[e]));
  return {{"kind", "minor"},
          {"target", builtin_name(target)},
          {"deleted", labels_json(c, w.spec.deleted)},
          {"contracted", labels_json(c, w.spec.contracted)},
          {"map", map},
          {"text", minor_certificate(c, builtin(target), w)}};
}

std::optional<Builtin> parse_builtin(const std::string& name) {
  for (Builtin b : {Builtin::Delta3, Builtin::Q6, Builtin::C5sq})
    if (name == builtin_name(b)) return b;
  return std::nullopt;
}

Condition ideal_condition(const Clutter& c, const Budget& budget) {
  Condition out;
  out.statement = "mult(S) is ideal";
  out.method = "extreme points of the covering polyhedron";
  try {
    const auto cert = is_ideal(c, budget);
    out.verdict = cert.integral ? Verdict::True : Verdict::False;
    if (cert.integral) {
      out.certificate = {{"kind", "extreme_points"}, {"extreme_points", cert.extreme_point_count}};
    } else {
      out.certificate = {{"kind", "fractional_point"},
                         {"x", rational_vector_json(cert.fractional->x)},
                         {"extreme_points", cert.extreme_point_count},
                         {"fractional", cert.fractional_count}};
    }
  } catch (const Error& e) {
    if (!is_budget_error(e)) throw;
    out.certificate = budget_certificate(e);
  }
  return out;
}

Json disjoint_basis_json(const std::vector<Point>& basis) {
  Json a = Json::array();
  for (const auto& v : basis) a.push_back(point_json(v));
  return a;
}

Condition disjoint_condition(const Subspace& s) {
  Condition out;
  out.statement = "S has a basis of vectors with pairwise disjoint supports";
  out.method = "reduced row echelon form";
  if (auto basis = disjoint_support_basis(s)) {
    out.verdict = Verdict::True;
    out.certificate = {{"kind", "disjoint_basis"}, {"basis", disjoint_basis_json(*basis)}};
    return out;
  }
  out.verdict = Verdict::False;
  const auto pair = intersecting_circuits(matroid_of(s));
  if (!pair) fail(Errc::Internal, "no disjoint-support basis but no intersecting circuits");
  out.certificate = {{"kind", "intersecting_circuits"},
                     {"circuits", {coords_json(mask_elements(pair->first)), coords_json(mask_elements(pair->second))}}};
  return out;
}

Condition structure_condition(const Subspace& s, const Budget& budget) {
  Condition out;
  out.statement = "S is a product of factors of dimension at most 1 or with a sunflower basis";
  out.method = "factorization and sunflower detection";
  Json factors = Json::array();
  bool ok = true;
  for (const auto& f : factor(s)) {
    Json entry{{"coords", coords_json(f.coords)}};
    if (f.space.dim() <= 1) {
      entry["kind"] = "line";
      entry["generators"] = disjoint_basis_json(f.space.basis());
    } else if (auto w = sunflower_basis(f.space)) {
      entry["kind"] = "sunflower";
      entry["permutation"] = coords_json(w->permutation);
      entry["block_sizes"] = w->block_sizes;
      entry["rows"] = disjoint_basis_json(w->rows);
    } else {
      ok = false;
      break;
    }
    factors.push_back(entry);
  }
  if (ok) {
    out.verdict = Verdict::True;
    out.certificate = {{"kind", "factorization"}, {"factors", factors}};
    return out;
  }
  out.verdict = Verdict::False;
  const CircuitMatroid m = matroid_of(s);
  try {
    for (MatroidTarget t : {MatroidTarget::U24, MatroidTarget::MK4e}) {
      if (auto mm = has_minor(m, t, budget)) {
        out.certificate = {{"kind", "matroid_minor"},
                           {"target", matroid_target_name(t)},
                           {"deleted", coords_json(mask_elements(mm->deleted))},
                           {"contracted", coords_json(mask_elements(mm->contracted))},
                           {"kept", coords_json(mm->kept)}};
        return out;
      }
    }
  } catch (const Error& e) {
    if (!is_budget_error(e)) throw;
  }
  out.certificate = {{"kind", "unstructured"}, {"matroid", m.to_text()}};
  return out;
}

Condition excluded_minor_condition(const Clutter& c, const std::vector<Builtin>& targets, const Budget& budget) {
  Condition out;
  std::string names;
  for (Builtin t : targets) names += (names.empty() ? "" : " or ") + std::string(builtin_name(t));
  out.statement = "mult(S) has no " + names + " minor";
  out.method = "exhaustive minor search";
  std::optional<Error> budget_hit;
  for (Builtin t : targets) {
    try {
      if (auto w = find_minor(c, builtin(t), budget)) {
        out.verdict = Verdict::False;
        out.certificate = minor_json(c, t, *w);
        return out;
      }
    } catch (const Error& e) {
      if (!is_budget_error(e)) throw;
      budget_hit = e;
    }
  }
  if (budget_hit) {
    out.certificate = budget_certificate(*budget_hit);
    return out;
  }
  out.verdict = Verdict::True;
  Json names_json = Json::array();
  for (Builtin t : targets) names_json.push_back(builtin_name(t));
  out.certificate = {{"kind", "minor_absent"}, {"targets", names_json}};
  return out;
}

Json weights_json(const WeightVector& w) {
  Json a = Json::array();
  for (Weight x : w) a.push_back(x);
  return a;
}

Condition mfmc_condition(const Clutter& c, const Budget& budget) {
  Condition out;
  out.statement = "mult(S) has the MFMC property";
  out.method = "weight refuter over {0,1,large} and packing-property sweep";
  try {
    if (auto v = mfmc_check(c, 1, true, budget)) {
      out.verdict = Verdict::False;
      out.certificate = {{"kind", "mfmc_violation"}, {"weights", weights_json(v->w)}, {"tau", v->tau}, {"nu", v->nu}};
      return out;
    }
    if (auto m = has_packing_property(c, budget)) {
      const Clutter sub = minor(c, *m);
      out.verdict = Verdict::False;
      out.certificate = {{"kind", "nonpacking_minor"},
                         {"deleted", labels_json(c, m->deleted)},
                         {"contracted", labels_json(c, m->contracted)},
                         {"tau", tau(sub, unit_weights(sub), budget)},
                         {"nu", nu(sub, unit_weights(sub), budget)}};
      return out;
    }
    out.verdict = Verdict::True;
    out.certificate = {{"kind", "packing_property"}, {"refuter_max_weight", 1}, {"refuter_large", true}};
  } catch (const Error& e) {
    if (!is_budget_error(e)) throw;
    out.certificate = budget_certificate(e);
  }
  return out;
}

// Idealness for spaces past the polyhedral budget, from the other two
// conditions: an excluded-minor witness proves non-idealness, a
// disjoint-support basis splits mult(S) into clutters with disjoint members.
Condition derived_ideal_condition(const Condition& ii, const Condition& iii) {
  Condition out;
  out.statement = "mult(S) is ideal";
  if (iii.verdict == Verdict::False) {
    out.verdict = Verdict::False;
    out.method = "derived: C5sq minor is non-ideal and idealness is minor-closed";
    out.certificate = {{"kind", "derived_excluded_minor"}, {"minor", iii.certificate}};
  } else if (ii.verdict == Verdict::True) {
    out.verdict = Verdict::True;
    out.method = "derived: product of clutters with pairwise disjoint members";
    out.certificate = {{"kind", "derived_disjoint_members"}, {"basis", ii.certificate["basis"]}};
  } else {
    out.method = "derived";
    out.certificate = {{"kind", "underivable"}};
  }
  return out;
}

Json condition_json(const Condition& c) {
  return {{"statement", c.statement},
          {"verdict", verdict_name(c.verdict)},
          {"method", c.method},
          {"certificate", c.certificate}};
}

}  // namespace

GroundElement parse_element_label(const std::string& label) {
  try {
    const auto colon = label.find(':');
    if (colon == std::string::npos) return {-1, std::stoi(label)};
    return {std::stoi(label.substr(0, colon)) - 1, std::stoi(label.substr(colon + 1))};
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad element label '" + label + "'");
  }
}

std::uint64_t subspace_count(int q, int n) {
  // sum over pivot sets of q^(free positions)
  std::uint64_t total = 0;
  for (Mask piv = 0; piv < bit(n); ++piv) {
    int free = 0, rank_so_far = 0;
    for (int j = 0; j < n; ++j) {
      if (piv & bit(j)) ++rank_so_far;
      else free += rank_so_far;
    }
    std::uint64_t term = 1;
    for (int f = 0; f < free; ++f) {
      if (term > UINT64_MAX / static_cast<std::uint64_t>(q)) return UINT64_MAX;
      term *= static_cast<std::uint64_t>(q);
    }
    if (total > UINT64_MAX - term) return UINT64_MAX;
    total += term;
  }
  return total;
}

std::vector<Subspace> enumerate_subspaces(int q, int n, const Budget& budget) {
  const FieldPtr f = Field::get(q);
  if (n < 1 || n > 20) fail(Errc::PreconditionViolated, "n must be between 1 and 20");
  const std::uint64_t count = subspace_count(q, n);
  if (count > budget.max_points)
    fail(Errc::BudgetExceeded, "GF(" + std::to_string(q) + ")^" + std::to_string(n) + " has " +
                                   std::to_string(count) + " subspaces, over the cap");
  std::vector<Subspace> out;
  out.reserve(count);
  for (Mask piv = 0; piv < bit(n); ++piv) {
    const auto pivots = mask_elements(piv);
    const int r = static_cast<int>(pivots.size());
    std::vector<std::pair<int, int>> slots;  // (row, column) free entries
    for (int t = 0; t < r; ++t)
      for (int j = pivots[t] + 1; j < n; ++j)
        if (!(piv & bit(j))) slots.emplace_back(t, j);
    std::vector<int> digits(slots.size(), 0);
    while (true) {
      Matrix rows(r, Point(n, 0));
      for (int t = 0; t < r; ++t) rows[t][pivots[t]] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) rows[slots[s].first][slots[s].second] = static_cast<Element>(digits[s]);
      out.push_back(Subspace::span(f, n, rows));
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const char* theorem_id(Theorem t) {
  switch (t) {
    case Theorem::OddField: return "1.1";
    case Theorem::Field4: return "1.2";
    case Theorem::EvenFieldAbove4: return "1.3";
    case Theorem::Mfmc: return "1.4";
  }
  return "?";
}

std::optional<Theorem> parse_theorem(const std::string& id) {
  for (Theorem t : {Theorem::OddField, Theorem::Field4, Theorem::EvenFieldAbove4, Theorem::Mfmc})
    if (id == theorem_id(t) || id == std::string("T") + theorem_id(t)) return t;
  return std::nullopt;
}

bool theorem_applies(Theorem t, int q) {
  switch (t) {
    case Theorem::OddField: return q % 2 == 1;
    case Theorem::Field4: return q == 4;
    case Theorem::EvenFieldAbove4: return q % 2 == 0 && q > 4;
    case Theorem::Mfmc: return true;
  }
  return false;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

bool TheoremReport::agreement() const {
  return !has_unknown() && i.verdict == ii.verdict && ii.verdict == iii.verdict;
}

bool TheoremReport::disagreement() const {
  std::vector<Verdict> known;
  for (const Condition* c : {&i, &ii, &iii})
    if (c->verdict != Verdict::Unknown) known.push_back(c->verdict);
  return std::adjacent_find(known.begin(), known.end(), std::not_equal_to<>()) != known.end();
}

bool TheoremReport::has_unknown() const {
  return i.verdict == Verdict::Unknown || ii.verdict == Verdict::Unknown || iii.verdict == Verdict::Unknown;
}

Json TheoremReport::to_json() const {
  return {{"theorem", theorem_id(theorem)},
          {"description", instance},
          {"instance", space},
          {"conditions", {{"i", condition_json(i)}, {"ii", condition_json(ii)}, {"iii", condition_json(iii)}}},
          {"agreement", agreement()},
          {"disagreement", disagreement()}};
}

TheoremReport verify_theorem(const Subspace& s, Theorem t, const Budget& budget) {
  if (!theorem_applies(t, s.q()))
    fail(Errc::WrongFieldClass, std::string("theorem ") + theorem_id(t) + " does not cover GF(" + std::to_string(s.q()) + ")");
  TheoremReport r;
  r.theorem = t;
  r.instance = s.describe();
  r.space = Json::parse(s.to_json());
  const Clutter c = mult(s);
  switch (t) {
    case Theorem::OddField:
      r.i = ideal_condition(c, budget);
      r.ii = disjoint_condition(s);
      r.iii = excluded_minor_condition(c, {Builtin::Delta3}, budget);
      break;
    case Theorem::Field4:
      r.i = ideal_condition(c, budget);
      r.ii = structure_condition(s, budget);
      r.iii = excluded_minor_condition(c, {Builtin::Delta3}, budget);
      break;
    case Theorem::EvenFieldAbove4:
      r.ii = disjoint_condition(s);
      r.iii = excluded_minor_condition(c, {Builtin::C5sq}, budget);
      if (static_cast<std::size_t>(c.size()) <= budget.vertex_enum_ground) r.i = ideal_condition(c, budget);
      else r.i = derived_ideal_condition(r.ii, r.iii);
      break;
    case Theorem::Mfmc:
      r.i = mfmc_condition(c, budget);
      r.ii = disjoint_condition(s);
      r.iii = excluded_minor_condition(c, {Builtin::Delta3, Builtin::Q6}, budget);
      break;
  }
  return r;
}

SweepResult sweep(int q, int n, Theorem t, int jobs, const Budget& budget) {
  if (!theorem_applies(t, q))
    fail(Errc::WrongFieldClass, std::string("theorem ") + theorem_id(t) + " does not cover GF(" + std::to_string(q) + ")");
  const auto spaces = enumerate_subspaces(q, n, budget);
  SweepResult out;
  out.reports.resize(spaces.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < spaces.size();) {
      try {
        out.reports[k] = verify_theorem(spaces[k], t, budget);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = spaces.size();
      }
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  for (const auto& r : out.reports) {
    ++out.summary.total;
    if (r.disagreement()) ++out.summary.disagree;
    else if (r.has_unknown()) ++out.summary.unknown;
    else ++out.summary.agree;
  }
  return out;
}

std::string sweep_csv_header() { return "index,space,dim,theorem,i,ii,iii,agreement"; }

std::string sweep_csv_row(std::size_t index, const TheoremReport& r) {
  std::ostringstream out;
  const int dim = static_cast<int>(r.space["generators"].size());
  out << index << ",\"" << r.instance << "\"," << dim << ',' << theorem_id(r.theorem) << ',' << verdict_name(r.i.verdict)
      << ',' << verdict_name(r.ii.verdict) << ',' << verdict_name(r.iii.verdict) << ','
      << (r.agreement() ? "agree" : r.disagreement() ? "DISAGREE" : "unknown");
  return out.str();
}

std::string sweep_summary_line(const SweepSummary& s) {
  std::ostringstream out;
  out << "subspaces=" << s.total << " agree=" << s.agree << " disagree=" << s.disagree << " unknown=" << s.unknown;
  return out.str();
}

// ---------------------------------------------------------------------------
// certificate checking

namespace {

struct CheckContext {
  const Subspace& space;
  const Budget& budget;
  std::optional<Clutter> clutter;

  const Clutter& mult_s() {
    if (!clutter) clutter = mult(space);
    return *clutter;
  }
};

Point point_from_json(const Json& j, int n) {
  Point p;
  for (const auto& v : j) p.push_back(static_cast<Element>(v.get<int>()));
  if (static_cast<int>(p.size()) != n) fail(Errc::VerificationFailed, "vector of the wrong length");
  return p;
}

std::vector<int> coords_from_json(const Json& j) {
  std::vector<int> out;
  for (const auto& v : j) out.push_back(v.get<int>() - 1);
  return out;
}

MinorWitness witness_from_json(const Clutter& c, const Json& cert) {
  MinorWitness w;
  w.spec.deleted = mask_from_labels(c, cert.at("deleted"));
  w.spec.contracted = mask_from_labels(c, cert.at("contracted"));
  for (const auto& l : cert.at("map")) {
    const int idx = c.index_of(parse_element_label(l.get<std::string>()));
    if (idx < 0) fail(Errc::VerificationFailed, "unknown element " + l.get<std::string>());
    w.map.push_back(idx);
  }
  return w;
}

bool check_minor_cert(const Clutter& c, const Json& cert, std::string& msg) {
  const auto target = parse_builtin(cert.at("target").get<std::string>());
  if (!target) {
    msg = "unknown target";
    return false;
  }
  if (!check_minor_witness(c, builtin(*target), witness_from_json(c, cert))) {
    msg = "minor does not reproduce " + std::string(builtin_name(*target));
    return false;
  }
  msg = std::string(builtin_name(*target)) + " minor reproduced";
  return true;
}

// Minimal nonempty support, checked against the enumerated points.
bool is_circuit(const std::vector<Point>& points, Mask coords) {
  bool exact = false;
  for (const auto& p : points) {
    const Mask sup = support_mask(p);
    if (sup == 0) continue;
    if (sup == coords) exact = true;
    else if ((sup & coords) == sup) return false;
  }
  return exact;
}

bool check_disjoint_basis(const Subspace& s, const Json& basis, std::string& msg) {
  Matrix rows;
  Mask seen = 0;
  for (const auto& v : basis) {
    Point p = point_from_json(v, s.n());
    if (!s.contains(p)) {
      msg = "basis vector outside S";
      return false;
    }
    const Mask sup = support_mask(p);
    if (sup == 0 || (sup & seen)) {
      msg = "supports are not pairwise disjoint and nonzero";
      return false;
    }
    seen |= sup;
    rows.push_back(p);
  }
  if (static_cast<int>(rows.size()) != s.dim()) {
    msg = "wrong number of basis vectors";
    return false;
  }
  msg = "disjoint-support basis checked";
  return true;
}

bool check_one(CheckContext& ctx, const Json& cert, bool& rerun, std::string& msg) {
  const std::string kind = cert.at("kind").get<std::string>();
  const Subspace& s = ctx.space;
  rerun = false;
  if (kind == "budget" || kind == "underivable") {
    msg = "no claim to check";
    return true;
  }
  if (kind == "extreme_points") {
    rerun = true;
    const auto c = is_ideal(ctx.mult_s(), ctx.budget);
    msg = std::to_string(c.extreme_point_count) + " extreme points, all integral";
    return c.integral && c.extreme_point_count == cert.at("extreme_points").get<std::size_t>();
  }
  if (kind == "fractional_point") {
    RationalVector x;
    for (const auto& v : cert.at("x")) x.emplace_back(v.get<std::string>());
    const bool fractional = std::any_of(x.begin(), x.end(), [](const Rational& r) { return denominator(r) != 1; });
    msg = "fractional extreme point checked";
    return fractional && static_cast<int>(x.size()) == ctx.mult_s().size() && is_extreme_point(ctx.mult_s(), x);
  }
  if (kind == "disjoint_basis") return check_disjoint_basis(s, cert.at("basis"), msg);
  if (kind == "intersecting_circuits") {
    const auto points = s.enumerate_points(ctx.budget.max_points);
    const auto& cs = cert.at("circuits");
    if (cs.size() != 2) return false;
    const Mask a = elements_mask(coords_from_json(cs[0])), b = elements_mask(coords_from_json(cs[1]));
    msg = "two distinct intersecting circuits checked";
    return a != b && (a & b) && is_circuit(points, a) && is_circuit(points, b);
  }
  if (kind == "factorization") {
    std::vector<Factor> factors;
    for (const auto& fj : cert.at("factors")) {
      const auto coords = coords_from_json(fj.at("coords"));
      const int m = static_cast<int>(coords.size());
      if (fj.at("kind") == "line") {
        Matrix rows;
        for (const auto& v : fj.at("generators")) rows.push_back(point_from_json(v, m));
        if (rows.size() > 1) return false;
        factors.push_back({coords, Subspace::span(s.field_ptr(), m, rows)});
      } else {
        SunflowerWitness w;
        w.permutation = coords_from_json(fj.at("permutation"));
        w.block_sizes = fj.at("block_sizes").get<std::vector<int>>();
        for (const auto& v : fj.at("rows")) w.rows.push_back(point_from_json(v, m));
        Subspace part = Subspace::span(s.field_ptr(), m, w.rows);
        if (!check_sunflower(part, w)) {
          msg = "sunflower shape fails";
          return false;
        }
        factors.push_back({coords, part});
      }
    }
    msg = "factors reassemble S";
    return assemble(s.field_ptr(), s.n(), factors) == s;
  }
  if (kind == "matroid_minor") {
    MatroidTarget target = MatroidTarget::U24;
    bool known = false;
    for (MatroidTarget t : {MatroidTarget::U24, MatroidTarget::MK4e, MatroidTarget::A3, MatroidTarget::MK4})
      if (cert.at("target") == matroid_target_name(t)) target = t, known = true;
    if (!known) return false;
    const auto m = matroid_of(s).minor(elements_mask(coords_from_json(cert.at("deleted"))),
                                       elements_mask(coords_from_json(cert.at("contracted"))));
    msg = std::string(matroid_target_name(target)) + " matroid minor checked";
    return matroid_isomorphism(target_matroid(target), m).has_value();
  }
  if (kind == "minor") return check_minor_cert(ctx.mult_s(), cert, msg);
  if (kind == "minor_absent") {
    rerun = true;
    for (const auto& t : cert.at("targets")) {
      const auto b = parse_builtin(t.get<std::string>());
      if (!b || find_minor(ctx.mult_s(), builtin(*b), ctx.budget)) {
        msg = "minor search found " + t.get<std::string>();
        return false;
      }
    }
    msg = "minor search repeated, nothing found";
    return true;
  }
  if (kind == "mfmc_violation") {
    WeightVector w = cert.at("weights").get<WeightVector>();
    if (static_cast<int>(w.size()) != ctx.mult_s().size()) return false;
    const Weight t = tau(ctx.mult_s(), w, ctx.budget), v = nu(ctx.mult_s(), w, ctx.budget);
    msg = "tau=" + std::to_string(t) + " nu=" + std::to_string(v);
    return t > v;
  }
  if (kind == "nonpacking_minor") {
    const MinorSpec spec{mask_from_labels(ctx.mult_s(), cert.at("deleted")),
                         mask_from_labels(ctx.mult_s(), cert.at("contracted"))};
    const Clutter sub = minor(ctx.mult_s(), spec);
    const Weight t = tau(sub, unit_weights(sub), ctx.budget), v = nu(sub, unit_weights(sub), ctx.budget);
    msg = "minor with tau=" + std::to_string(t) + " nu=" + std::to_string(v);
    return t > v;
  }
  if (kind == "packing_property") {
    rerun = true;
    msg = "refuter and packing sweep repeated";
    return !mfmc_check(ctx.mult_s(), 1, true, ctx.budget) && !has_packing_property(ctx.mult_s(), ctx.budget);
  }
  if (kind == "derived_disjoint_members") {
    if (!check_disjoint_basis(s, cert.at("basis"), msg)) return false;
    // each basis vector spans a factor whose clutter has pairwise disjoint members
    for (const auto& v : cert.at("basis")) {
      const Point p = point_from_json(v, s.n());
      std::vector<int> outside;
      for (int l = 0; l < s.n(); ++l)
        if (p[l] == 0) outside.push_back(l);
      const Clutter line = mult(project(Subspace::span(s.field_ptr(), s.n(), {p}), outside));
      const auto& ms = line.members();
      for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t b = a + 1; b < ms.size(); ++b)
          if (ms[a] & ms[b]) {
            msg = "factor members overlap";
            return false;
          }
    }
    msg = "disjoint-support basis; factors have disjoint members";
    return true;
  }
  if (kind == "derived_excluded_minor") {
    if (!check_minor_cert(ctx.mult_s(), cert.at("minor"), msg)) return false;
    const auto target = parse_builtin(cert.at("minor").at("target").get<std::string>());
    msg += "; target is non-ideal";
    return !is_ideal(builtin(*target), ctx.budget).integral;
  }
  msg = "unknown certificate kind '" + kind + "'";
  return false;
}

void collect(const Json& j, const std::string& path, std::vector<std::pair<std::string, const Json*>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "certificate" && it->is_object()) out.emplace_back(path + "/certificate", &*it);
      else collect(*it, path + "/" + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) collect(j[k], path + "/" + std::to_string(k), out);
  }
}

std::vector<ChainStep> steps_from_json(const Json& steps) {
  std::vector<ChainStep> out;
  for (const auto& sj : steps) {
    ChainStep st;
    const std::string op = sj.at("op").get<std::string>();
    if (op == "delete") st.op = ChainStep::Op::Delete;
    else if (op == "contract") st.op = ChainStep::Op::Contract;
    else fail(Errc::VerificationFailed, "unknown step '" + op + "'");
    for (const auto& l : sj.at("elements")) st.elements.push_back(parse_element_label(l.get<std::string>()));
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace

std::vector<CertificateCheck> check_certificate(const Json& doc, const Budget& budget) {
  if (!doc.is_object() || !doc.contains("instance")) fail(Errc::ParseError, "certificate document lacks an instance");
  const Subspace s = parse_subspace(doc.at("instance").dump());
  CheckContext ctx{s, budget, std::nullopt};
  std::vector<CertificateCheck> out;
  if (doc.value("kind", "") == "witness_chain") {
    CertificateCheck chk;
    chk.path = "";
    chk.kind = "witness_chain";
    try {
      const auto target = parse_builtin(doc.at("target").get<std::string>());
      if (!target) fail(Errc::VerificationFailed, "unknown target");
      const Clutter result = replay(ctx.mult_s(), steps_from_json(doc.at("steps")));
      chk.ok = is_isomorphic(result, builtin(*target), budget).has_value();
      chk.message = chk.ok ? std::string("replay is isomorphic to ") + builtin_name(*target) : "replay is not the target";
    } catch (const Error& e) {
      chk.message = e.what();
    }
    out.push_back(chk);
    return out;
  }
  std::vector<std::pair<std::string, const Json*>> certs;
  collect(doc, "", certs);
  for (const auto& [path, cert] : certs) {
    CertificateCheck chk;
    chk.path = path;
    chk.kind = cert->value("kind", "");
    try {
      chk.ok = check_one(ctx, *cert, chk.rerun, chk.message);
    } catch (const Error& e) {
      chk.ok = false;
      chk.message = e.what();
    } catch (const Json::exception& e) {
      chk.ok = false;
      chk.message = std::string("malformed certificate: ") + e.what();
    }
    out.push_back(chk);
  }
  return out;
}

// ---------------------------------------------------------------------------
// analysis

Json analyze(const Subspace& s, const AnalyzeOptions& options, const Budget& budget) {
  Json out{{"instance", Json::parse(s.to_json())}, {"description", s.describe()}};
  const Clutter c = mult(s);
  out["clutter"] = {{"elements", c.size()}, {"members", c.members().size()}};
  if (options.ideal) out["ideal"] = condition_json(ideal_condition(c, budget));
  if (options.mfmc) out["mfmc"] = condition_json(mfmc_condition(c, budget));
  if (options.minors) {
    Json minors = Json::object();
    for (Builtin b : {Builtin::Delta3, Builtin::Q6, Builtin::C5sq})
      minors[builtin_name(b)] = condition_json(excluded_minor_condition(c, {b}, budget));
    out["minors"] = minors;
  }
  if (options.structure) {
    Json st;
    st["disjoint_basis"] = condition_json(disjoint_condition(s));
    st["factorization"] = condition_json(structure_condition(s, budget));
    const CircuitMatroid m = matroid_of(s);
    Json circuits = Json::array();
    for (Mask x : m.circuits()) circuits.push_back(coords_json(mask_elements(x)));
    Json comps = Json::array();
    for (const auto& comp : classify(m).components) {
      Json cj{{"elements", coords_json(comp.elements)}, {"shape", block_shape_name(comp.shape)}};
      if (comp.shape == BlockShape::SubdividedAt) cj["t"] = comp.t;
      comps.push_back(cj);
    }
    st["matroid"] = {{"circuits", circuits}, {"components", comps}};
    out["structure"] = st;
  }
  return out;
}

namespace {

std::string join_labels(const Json& a) {
  std::string s = "{";
  for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + a[k].get<std::string>();
  return s + "}";
}

std::string certificate_text(const Json& cert) {
  const std::string kind = cert.value("kind", "");
  if (kind == "extreme_points")
    return "0 fractional extreme points of " + std::to_string(cert["extreme_points"].get<std::size_t>()) + " examined";
  if (kind == "fractional_point") {
    std::string s = "fractional extreme point (";
    for (std::size_t k = 0; k < cert["x"].size(); ++k) s += (k ? "," : "") + cert["x"][k].get<std::string>();
    return s + "), " + std::to_string(cert["fractional"].get<std::size_t>()) + " of " +
           std::to_string(cert["extreme_points"].get<std::size_t>()) + " extreme points fractional";
  }
  if (kind == "disjoint_basis" || kind == "derived_disjoint_members") return "basis " + cert["basis"].dump();
  if (kind == "intersecting_circuits") return "circuits " + cert["circuits"][0].dump() + " and " + cert["circuits"][1].dump() + " meet";
  if (kind == "factorization") {
    std::string s;
    for (const auto& f : cert["factors"]) s += (s.empty() ? "" : " x ") + f["kind"].get<std::string>() + f["coords"].dump();
    return s;
  }
  if (kind == "matroid_minor") return cert["target"].get<std::string>() + " matroid minor, delete " + cert["deleted"].dump() + " contract " + cert["contracted"].dump();
  if (kind == "minor") return cert["target"].get<std::string>() + " minor: " + cert["text"].get<std::string>();
  if (kind == "minor_absent") return "exhaustive search found none";
  if (kind == "mfmc_violation")
    return "weights " + cert["weights"].dump() + " give tau=" + cert["tau"].dump() + " > nu=" + cert["nu"].dump();
  if (kind == "nonpacking_minor")
    return "minor I=" + join_labels(cert["deleted"]) + " J=" + join_labels(cert["contracted"]) + " has tau=" + cert["tau"].dump() + " nu=" + cert["nu"].dump();
  if (kind == "packing_property") return "no violation over weights {0,1,large}; every minor packs";
  if (kind == "derived_excluded_minor") return certificate_text(cert["minor"]);
  if (kind == "budget") return "budget exhausted: " + cert["reason"].get<std::string>();
  return kind;
}

std::string verdict_word(const Json& cond, const char* yes, const char* no) {
  const std::string v = cond["verdict"].get<std::string>();
  return v == "true" ? yes : v == "false" ? no : "UNKNOWN";
}

}  // namespace

std::string render_analysis(const Json& a) {
  std::ostringstream out;
  out << a["description"].get<std::string>() << ": mult(S) has " << a["clutter"]["members"] << " members on "
      << a["clutter"]["elements"] << " elements\n";
  if (a.contains("ideal"))
    out << "ideal: " << verdict_word(a["ideal"], "IDEAL", "NOT IDEAL") << " (" << certificate_text(a["ideal"]["certificate"]) << ")\n";
  if (a.contains("mfmc"))
    out << "mfmc: " << verdict_word(a["mfmc"], "MFMC", "NOT MFMC") << " (" << certificate_text(a["mfmc"]["certificate"]) << ")\n";
  if (a.contains("minors"))
    for (auto it = a["minors"].begin(); it != a["minors"].end(); ++it)
      out << "minor " << it.key() << ": " << verdict_word(*it, "absent", "PRESENT") << " (" << certificate_text((*it)["certificate"]) << ")\n";
  if (a.contains("structure")) {
    const auto& st = a["structure"];
    out << "disjoint-support basis: " << verdict_word(st["disjoint_basis"], "yes", "no") << " (" << certificate_text(st["disjoint_basis"]["certificate"]) << ")\n";
    out << "product of lines and sunflowers: " << verdict_word(st["factorization"], "yes", "no") << " (" << certificate_text(st["factorization"]["certificate"]) << ")\n";
    out << "matroid components:";
    for (const auto& c : st["matroid"]["components"]) {
      out << ' ' << c["shape"].get<std::string>() << c["elements"].dump();
      if (c.contains("t")) out << "(t=" << c["t"] << ')';
    }
    out << '\n';
  }
  return out.str();
}

std::string render_report(const TheoremReport& r) {
  std::ostringstream out;
  out << "theorem " << theorem_id(r.theorem) << " on " << r.instance << '\n';
  const char* names[] = {"(i)  ", "(ii) ", "(iii)"};
  int k = 0;
  for (const Condition* c : {&r.i, &r.ii, &r.iii}) {
    out << "  " << names[k++] << ' ' << verdict_name(c->verdict) << "  " << c->statement << " [" << c->method
        << "]: " << certificate_text(c->certificate) << '\n';
  }
  out << "  agreement: " << (r.agreement() ? "yes" : r.disagreement() ? "NO" : "unknown") << '\n';
  return out.str();
}

}  // namespace clutterforge
