#include "clutterforge/clutterforge.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "error.hpp"
#include "gf.hpp"
#include "matroid.hpp"
#include "verify.hpp"
#include "vspace.hpp"

namespace cf = clutterforge;

struct cf_subspace {
  cf::Subspace space;
};

namespace {

thread_local std::string last_error;

cf_status to_status(cf::Errc e) { return static_cast<cf_status>(static_cast<int>(e)); }

cf_status set_error(cf_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

// Runs body, translating exceptions into a status and the thread's message.
template <class F>
cf_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return CF_OK;
  } catch (const cf::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(CF_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CF_INTERNAL, e.what());
  } catch (...) {
    return set_error(CF_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cf::Budget to_budget(const cf_budget* b) {
  cf::Budget out = cf::default_budget();
  if (!b) return out;
  out.search_nodes = b->search_nodes;
  out.vertex_enum_ground = b->vertex_enum_ground;
  out.isomorphism_ground = b->isomorphism_ground;
  out.matroid_minor_ground = b->matroid_minor_ground;
  out.graph_minor_edges = b->graph_minor_edges;
  out.max_points = b->max_points;
  return out;
}

cf::Theorem theorem_arg(const char* id) {
  if (!id) cf::fail(cf::Errc::ParseError, "missing theorem");
  auto t = cf::parse_theorem(id);
  if (!t) cf::fail(cf::Errc::ParseError, std::string("unknown theorem '") + id + "', expected 1.1 .. 1.4");
  return *t;
}

cf::Point point_arg(const cf_subspace* s, const int* alpha, std::size_t len) {
  if (static_cast<int>(len) != s->space.n())
    cf::fail(cf::Errc::DimensionMismatch, "alpha needs " + std::to_string(s->space.n()) + " entries");
  cf::Point p(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (alpha[i] < 0 || alpha[i] >= s->space.q())
      cf::fail(cf::Errc::BadIndex, "alpha entry " + std::to_string(alpha[i]) + " outside GF(" + std::to_string(s->space.q()) + ")");
    p[i] = static_cast<cf::Element>(alpha[i]);
  }
  return p;
}

int count_unknown(const nlohmann::json& j) {
  int n = 0;
  if (j.is_object()) {
    auto it = j.find("verdict");
    if (it != j.end() && it->is_string() && *it == "unknown") ++n;
    for (const auto& v : j) n += count_unknown(v);
  } else if (j.is_array()) {
    for (const auto& v : j) n += count_unknown(v);
  }
  return n;
}

std::string labels_text(const nlohmann::json& a) {
  std::string s;
  for (const auto& e : a) s += (s.empty() ? "" : " ") + e.get<std::string>();
  return s;
}

std::string render_witness(const nlohmann::json& w, const std::string& description) {
  std::ostringstream out;
  out << w["target"].get<std::string>() << " witness on " << description << '\n';
  int k = 1;
  for (const auto& st : w["steps"]) {
    out << "  step " << k++ << ": " << st["op"].get<std::string>() << ' ' << labels_text(st["elements"]);
    if (!st["note"].get<std::string>().empty()) out << "  (" << st["note"].get<std::string>() << ')';
    out << '\n';
  }
  const auto& ch = w["choices"];
  for (auto it = ch.begin(); it != ch.end(); ++it) {
    if (it.key() == "display" || it.key() == "display_columns") continue;
    out << "  " << it.key() << " = " << it->dump() << '\n';
  }
  if (ch.contains("display")) {
    out << "  before the last contraction (columns " << labels_text(ch["display_columns"]) << "):\n";
    for (const auto& row : ch["display"]) {
      out << "    ";
      for (const auto& b : row) out << b.get<int>();
      out << '\n';
    }
  }
  out << "  replayed result (" << w["result"].size() << " members):";
  for (const auto& m : w["result"]) out << " {" << labels_text(m) << '}';
  out << '\n';
  return out.str();
}

std::string render_profile(const nlohmann::json& p) {
  std::ostringstream out;
  out << "alpha (normalized) = " << p["alpha"].dump() << ", sigma = " << p["sigma"].get<std::string>()
      << ", scaling = " << p["scaling"].dump() << '\n';
  out << "members: " << p["members"] << '\n';
  out << "size-1 members: " << labels_text(p["singletons"]) << '\n';
  out << "size-2 graph: " << p["components"].size() << " components\n";
  for (const auto& c : p["components"]) {
    out << "  beta = " << c["beta"].dump() << ", " << c["edges"].size() << " edges\n";
  }
  out << "larger members: " << p["residual"].size() << '\n';
  return out.str();
}

nlohmann::json matroid_json(const cf::Subspace& s) {
  const cf::CircuitMatroid m = cf::matroid_of(s);
  auto coords = [](const std::vector<int>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (int x : v) a.push_back(x + 1);
    return a;
  };
  nlohmann::json circuits = nlohmann::json::array();
  for (cf::Mask c : m.circuits()) circuits.push_back(coords(cf::mask_elements(c)));
  const cf::StructureReport rep = cf::classify(m);
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : rep.components) {
    nlohmann::json cj{{"elements", coords(c.elements)}, {"shape", cf::block_shape_name(c.shape)}};
    if (c.shape == cf::BlockShape::SubdividedAt) cj["t"] = c.t;
    comps.push_back(cj);
  }
  nlohmann::json series = nlohmann::json::array();
  for (const auto& cls : m.series_classes()) series.push_back(coords(cls));
  nlohmann::json minors = nlohmann::json::object();
  for (cf::MatroidTarget t : {cf::MatroidTarget::U24, cf::MatroidTarget::MK4e})
    minors[cf::matroid_target_name(t)] = cf::has_minor(m, t).has_value();
  return {{"instance", nlohmann::json::parse(s.to_json())},
          {"description", s.describe()},
          {"size", m.size()},
          {"rank", m.rank()},
          {"circuits", circuits},
          {"components", comps},
          {"series_classes", series},
          {"disjoint_circuits", rep.all_disjoint_circuits},
          {"structured", rep.all_structured},
          {"minors", minors}};
}

std::string render_matroid(const nlohmann::json& m) {
  std::ostringstream out;
  out << "Matroid of " << m["description"].get<std::string>() << ": " << m["size"] << " elements, rank " << m["rank"] << '\n';
  out << "circuits:";
  for (const auto& c : m["circuits"]) out << ' ' << c.dump();
  out << "\ncomponents:";
  for (const auto& c : m["components"]) {
    out << ' ' << c["shape"].get<std::string>() << c["elements"].dump();
    if (c.contains("t")) out << "(t=" << c["t"] << ')';
  }
  out << "\nseries classes:";
  for (const auto& c : m["series_classes"]) out << ' ' << c.dump();
  out << "\ncircuits pairwise disjoint: " << (m["disjoint_circuits"].get<bool>() ? "yes" : "no") << '\n';
  out << "every component structured: " << (m["structured"].get<bool>() ? "yes" : "no") << '\n';
  for (auto it = m["minors"].begin(); it != m["minors"].end(); ++it)
    out << "minor " << it.key() << ": " << (it->get<bool>() ? "present" : "absent") << '\n';
  return out.str();
}

}  // namespace

extern "C" {

const char* cf_version(void) { return "0.1.0"; }

const char* cf_status_name(cf_status status) {
  if (status == CF_INVALID_ARGUMENT) return "InvalidArgument";
  if (status < CF_OK || status > CF_INTERNAL) return "Unknown";
  return cf::errc_name(static_cast<cf::Errc>(status));
}

const char* cf_last_error(void) { return last_error.c_str(); }

void cf_string_free(char* s) { std::free(s); }

void cf_budget_default(cf_budget* out) {
  if (!out) return;
  const cf::Budget b = cf::default_budget();
  out->search_nodes = b.search_nodes;
  out->vertex_enum_ground = static_cast<uint32_t>(b.vertex_enum_ground);
  out->isomorphism_ground = static_cast<uint32_t>(b.isomorphism_ground);
  out->matroid_minor_ground = static_cast<uint32_t>(b.matroid_minor_ground);
  out->graph_minor_edges = static_cast<uint32_t>(b.graph_minor_edges);
  out->max_points = b.max_points;
}

cf_status cf_field_tables(int q, cf_format format, char** out) {
  if (!out) return set_error(CF_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] {
    auto f = cf::Field::get(q);
    if (format == CF_JSON) {
      nlohmann::json add = nlohmann::json::array(), mul = nlohmann::json::array(), sym = nlohmann::json::array();
      for (int x = 0; x < q; ++x) {
        nlohmann::json ar = nlohmann::json::array(), mr = nlohmann::json::array();
        for (int y = 0; y < q; ++y) {
          ar.push_back(f->add(x, y));
          mr.push_back(f->mul(x, y));
        }
        add.push_back(ar);
        mul.push_back(mr);
        sym.push_back(f->symbol(x));
      }
      nlohmann::json j{{"q", q}, {"p", f->p()}, {"k", f->k()}, {"modulus", f->modulus()}, {"symbols", sym},
                       {"add", add}, {"mul", mul}};
      *out = dup(j.dump(2) + "\n");
    } else {
      *out = dup(f->tables_text());
    }
  });
}

cf_status cf_subspace_parse(const char* input, cf_subspace** out) {
  if (!input || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { *out = new cf_subspace{cf::parse_subspace(input)}; });
}

cf_status cf_subspace_zero_sum(int q, int n, cf_subspace** out) {
  if (!out) return set_error(CF_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] {
    if (n < 1 || n > 64) cf::fail(cf::Errc::TooLarge, "n must be in [1, 64]");
    *out = new cf_subspace{cf::Subspace::zero_sum(cf::Field::get(q), n)};
  });
}

void cf_subspace_free(cf_subspace* s) { delete s; }

int cf_subspace_q(const cf_subspace* s) { return s ? s->space.q() : 0; }
int cf_subspace_n(const cf_subspace* s) { return s ? s->space.n() : 0; }
int cf_subspace_dim(const cf_subspace* s) { return s ? s->space.dim() : 0; }

cf_status cf_subspace_describe(const cf_subspace* s, char** out) {
  if (!s || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { *out = dup(s->space.describe()); });
}

cf_status cf_analyze(const cf_subspace* s, unsigned flags, const cf_budget* budget, cf_format format, char** out,
                     int* out_unknown) {
  if (!s || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    cf::AnalyzeOptions opts;
    opts.ideal = flags & CF_ANALYZE_IDEAL;
    opts.mfmc = flags & CF_ANALYZE_MFMC;
    opts.minors = flags & CF_ANALYZE_MINORS;
    opts.structure = flags & CF_ANALYZE_STRUCTURE;
    const nlohmann::json a = cf::analyze(s->space, opts, to_budget(budget));
    if (out_unknown) *out_unknown = count_unknown(a);
    *out = dup(format == CF_JSON ? a.dump(2) + "\n" : cf::render_analysis(a));
  });
}

cf_status cf_verify_theorem(const cf_subspace* s, const char* theorem, const cf_budget* budget, cf_format format,
                            char** out, int* out_agreement) {
  if (!s || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const cf::TheoremReport r = cf::verify_theorem(s->space, theorem_arg(theorem), to_budget(budget));
    if (out_agreement) *out_agreement = r.agreement() ? 1 : r.disagreement() ? -1 : 0;
    *out = dup(format == CF_JSON ? r.to_json().dump(2) + "\n" : cf::render_report(r));
  });
}

cf_status cf_subspace_count(int q, int n, uint64_t* out) {
  if (!out) return set_error(CF_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] {
    cf::Field::get(q);
    *out = cf::subspace_count(q, n);
  });
}

cf_status cf_sweep(int q, int n, const char* theorem, int jobs, const cf_budget* budget, char** out_csv,
                   char** out_summary, uint64_t* out_disagree, uint64_t* out_unknown) {
  return guarded([&] {
    const cf::Theorem t = theorem_arg(theorem);
    cf::Field::get(q);
    if (!cf::theorem_applies(t, q))
      cf::fail(cf::Errc::WrongFieldClass, std::string("theorem ") + cf::theorem_id(t) + " does not cover GF(" + std::to_string(q) + ")");
    const cf::Budget b = to_budget(budget);
    if (cf::subspace_count(q, n) > b.max_points)
      cf::fail(cf::Errc::BudgetExceeded, "GF(" + std::to_string(q) + ")^" + std::to_string(n) + " has more subspaces than the budget allows");
    const cf::SweepResult res = cf::sweep(q, n, t, jobs < 1 ? 1 : jobs, b);
    if (out_csv) {
      std::string csv = cf::sweep_csv_header() + "\n";
      for (std::size_t k = 0; k < res.reports.size(); ++k) csv += cf::sweep_csv_row(k, res.reports[k]) + "\n";
      *out_csv = dup(csv);
    }
    if (out_summary) *out_summary = dup(cf::sweep_summary_line(res.summary));
    if (out_disagree) *out_disagree = res.summary.disagree;
    if (out_unknown) *out_unknown = res.summary.unknown;
  });
}

cf_status cf_witness(const cf_subspace* s, const char* kind, const int* alpha, size_t alpha_len, int64_t seed,
                     cf_format format, char** out) {
  if (!s || !kind || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::string k = kind;
    cf::WitnessChain w;
    if (k == "c5sq") {
      cf::C5sqOptions opts;
      if (alpha) opts.alpha = point_arg(s, alpha, alpha_len);
      if (seed >= 0) opts.seed = static_cast<std::uint64_t>(seed);
      w = cf::c5sq_witness(s->space, opts);
    } else if (k == "u24") {
      w = cf::delta3_witness_u24(s->space);
    } else if (k == "k4e") {
      w = cf::delta3_witness_k4e(s->space);
    } else {
      cf::fail(cf::Errc::ParseError, "unknown witness kind '" + k + "', expected c5sq, u24 or k4e");
    }
    const nlohmann::json j = w.to_json();
    *out = dup(format == CF_JSON ? j.dump(2) + "\n" : render_witness(j, s->space.describe()));
  });
}

cf_status cf_localize(const cf_subspace* s, const int* alpha, size_t alpha_len, cf_format format, char** out) {
  if (!s || !alpha || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const cf::LocalizationProfile p = cf::localization_profile(s->space, point_arg(s, alpha, alpha_len));
    nlohmann::json j = p.to_json(s->space.field());
    j["instance"] = nlohmann::json::parse(s->space.to_json());
    *out = dup(format == CF_JSON ? j.dump(2) + "\n" : render_profile(j));
  });
}

cf_status cf_matroid(const cf_subspace* s, cf_format format, char** out) {
  if (!s || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const nlohmann::json j = matroid_json(s->space);
    *out = dup(format == CF_JSON ? j.dump(2) + "\n" : render_matroid(j));
  });
}

cf_status cf_check_certificate(const char* document, const cf_budget* budget, cf_format format, char** out,
                               int* out_ok) {
  if (!document || !out) return set_error(CF_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
      cf::fail(cf::Errc::ParseError, std::string("certificate JSON: ") + e.what());
    }
    const auto checks = cf::check_certificate(doc, to_budget(budget));
    bool all = !checks.empty();
    for (const auto& c : checks) all = all && c.ok;
    if (out_ok) *out_ok = all ? 1 : 0;
    if (format == CF_JSON) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : checks)
        arr.push_back({{"path", c.path}, {"kind", c.kind}, {"ok", c.ok}, {"rerun", c.rerun}, {"message", c.message}});
      *out = dup(nlohmann::json{{"valid", all}, {"checks", arr}}.dump(2) + "\n");
    } else {
      std::ostringstream txt;
      for (const auto& c : checks) {
        txt << (c.ok ? "ok   " : "FAIL ") << c.kind << " at " << (c.path.empty() ? "/" : c.path);
        if (c.rerun) txt << " (search repeated)";
        if (!c.message.empty()) txt << ": " << c.message;
        txt << '\n';
      }
      txt << checks.size() << " certificates, " << (all ? "all valid" : "NOT all valid") << '\n';
      *out = dup(txt.str());
    }
  });
}

}  // extern "C"
