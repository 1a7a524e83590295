// Command-line front end over the C interface.
//
// Exit codes: 0 success, 1 usage or parse error, 2 some verdict UNKNOWN
// (budget), 3 disagreement or failed verification, 4 any other error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clutterforge/clutterforge.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kUnknown = 2, kDisagree = 3, kOther = 4 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(cf_status s) {
  switch (s) {
    case CF_OK: return kOk;
    case CF_PARSE_ERROR:
    case CF_INVALID_ARGUMENT: return kUsage;
    case CF_VERIFICATION_FAILED: return kDisagree;
    default: return kOther;
  }
}

void check(cf_status s) {
  if (s != CF_OK) throw Failure{exit_for(s), std::string(cf_status_name(s)) + ": " + cf_last_error()};
}

struct CString {
  char* p = nullptr;
  ~CString() { cf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct SpaceHandle {
  cf_subspace* p = nullptr;
  ~SpaceHandle() { cf_subspace_free(p); }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load(SpaceHandle& h, const std::string& path) {
  const std::string text = read_input(path);
  const cf_status s = cf_subspace_parse(text.c_str(), &h.p);
  if (s != CF_OK) throw Failure{exit_for(s), path + ": " + cf_status_name(s) + ": " + cf_last_error()};
}

// "1 0 0", "1,0,0" or, for single-digit entries, "100".
std::vector<int> parse_point(const std::string& text) {
  std::vector<int> out;
  const bool compact = text.find_first_of(" ,") == std::string::npos;
  if (compact) {
    for (char c : text) {
      if (c < '0' || c > '9') throw Failure{kUsage, "bad point '" + text + "'"};
      out.push_back(c - '0');
    }
    return out;
  }
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    std::istringstream words(tok);
    std::string w;
    while (words >> w) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(w, &used));
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw Failure{kUsage, "bad point entry '" + w + "'"};
      }
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Failure{kOther, "cannot write " + out_path};
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipartite clutters of subspaces over finite fields"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  bool json = false;
  std::string out_path, cert_path;
  std::uint64_t search_nodes = 0;
  unsigned vertex_ground = 0;
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--out", out_path, "write the main output to a file");
  app.add_option("--budget", search_nodes, "cap on search nodes per search")->check(CLI::PositiveNumber);
  app.add_option("--vertex-ground", vertex_ground, "largest ground set for vertex enumeration")
      ->check(CLI::Range(1, 64));
  app.add_option("--check-cert", cert_path, "re-validate a JSON report, analysis or witness");
  app.set_version_flag("--version", std::string(cf_version()));

  int q = 0, n = 0, jobs = 1;
  std::string file, theorem, kind = "c5sq", alpha;
  long long seed = -1;
  bool ideal = false, mfmc = false, minors = false, structure = false;

  auto* field = app.add_subcommand("field", "print the addition and multiplication tables of GF(q)");
  field->add_option("--q", q, "field order")->required();

  auto* analyze = app.add_subcommand("analyze", "idealness, MFMC, excluded minors and structure of mult(S)");
  analyze->add_option("file", file, "subspace file (text or JSON, - for stdin)")->required();
  analyze->add_flag("--ideal", ideal, "decide idealness by vertex enumeration");
  analyze->add_flag("--mfmc", mfmc, "decide the MFMC property");
  analyze->add_flag("--minors", minors, "search for Delta3, Q6 and C5sq minors");
  analyze->add_flag("--structure", structure, "disjoint-support basis and factorization");
  analyze->add_option("--theorem", theorem, "evaluate the three conditions of 1.1, 1.2, 1.3 or 1.4 instead");

  auto* witness = app.add_subcommand("witness", "replayed deletion/contraction chain exposing an excluded minor");
  witness->add_option("file", file, "subspace file")->required();
  witness->add_option("--kind", kind, "c5sq, u24 or k4e")->check(CLI::IsMember({"c5sq", "u24", "k4e"}));
  witness->add_option("--alpha", alpha, "point outside S to localize at (c5sq)");
  witness->add_option("--seed", seed, "randomize the free choices (c5sq)")->check(CLI::NonNegativeNumber);

  auto* sweep = app.add_subcommand("sweep", "evaluate a theorem on every subspace of GF(q)^n");
  sweep->add_option("--q", q, "field order")->required();
  sweep->add_option("--n", n, "dimension")->required()->check(CLI::Range(1, 64));
  sweep->add_option("--theorem", theorem, "1.1, 1.2, 1.3 or 1.4")->required();
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* localize = app.add_subcommand("localize", "structure of the localization at alpha");
  localize->add_option("file", file, "subspace file")->required();
  localize->add_option("--alpha", alpha, "point outside S")->required();

  auto* matroid = app.add_subcommand("matroid", "circuits and component shapes of Matroid(S)");
  matroid->add_option("file", file, "subspace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  cf_budget budget;
  cf_budget_default(&budget);
  if (search_nodes) budget.search_nodes = search_nodes;
  if (vertex_ground) budget.vertex_enum_ground = vertex_ground;
  const cf_format fmt = json ? CF_JSON : CF_TEXT;

  try {
    if (!cert_path.empty()) {
      if (!app.get_subcommands().empty()) throw Failure{kUsage, "--check-cert takes no subcommand"};
      const std::string doc = read_input(cert_path);
      CString out;
      int ok = 0;
      check(cf_check_certificate(doc.c_str(), &budget, fmt, &out.p, &ok));
      emit(out.str(), out_path);
      return ok ? kOk : kDisagree;
    }
    if (app.get_subcommands().empty()) throw Failure{kUsage, "a subcommand is required\n" + app.help()};

    if (*field) {
      CString out;
      check(cf_field_tables(q, fmt, &out.p));
      emit(out.str(), out_path);
      return kOk;
    }

    if (*analyze) {
      SpaceHandle s;
      load(s, file);
      CString out;
      if (!theorem.empty()) {
        int agreement = 0;
        check(cf_verify_theorem(s.p, theorem.c_str(), &budget, fmt, &out.p, &agreement));
        emit(out.str(), out_path);
        return agreement > 0 ? kOk : agreement < 0 ? kDisagree : kUnknown;
      }
      unsigned flags = (ideal ? CF_ANALYZE_IDEAL : 0) | (mfmc ? CF_ANALYZE_MFMC : 0) |
                       (minors ? CF_ANALYZE_MINORS : 0) | (structure ? CF_ANALYZE_STRUCTURE : 0);
      if (!flags) flags = CF_ANALYZE_IDEAL | CF_ANALYZE_MFMC | CF_ANALYZE_MINORS | CF_ANALYZE_STRUCTURE;
      int unknown = 0;
      check(cf_analyze(s.p, flags, &budget, fmt, &out.p, &unknown));
      emit(out.str(), out_path);
      return unknown ? kUnknown : kOk;
    }

    if (*witness) {
      SpaceHandle s;
      load(s, file);
      std::vector<int> a;
      if (!alpha.empty()) a = parse_point(alpha);
      CString out;
      check(cf_witness(s.p, kind.c_str(), a.empty() ? nullptr : a.data(), a.size(), seed, fmt, &out.p));
      emit(out.str(), out_path);
      return kOk;
    }

    if (*sweep) {
      CString csv, summary;
      std::uint64_t disagree = 0, unknown = 0;
      check(cf_sweep(q, n, theorem.c_str(), jobs, &budget, &csv.p, &summary.p, &disagree, &unknown));
      if (out_path.empty()) {
        std::cout << csv.str() << summary.str() << '\n';
      } else {
        emit(csv.str(), out_path);
        std::cout << summary.str() << '\n';
      }
      return disagree ? kDisagree : kOk;
    }

    if (*localize) {
      SpaceHandle s;
      load(s, file);
      const std::vector<int> a = parse_point(alpha);
      CString out;
      check(cf_localize(s.p, a.data(), a.size(), fmt, &out.p));
      emit(out.str(), out_path);
      return kOk;
    }

    if (*matroid) {
      SpaceHandle s;
      load(s, file);
      CString out;
      check(cf_matroid(s.p, fmt, &out.p));
      emit(out.str(), out_path);
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kUsage;
}
