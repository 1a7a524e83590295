#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "clutterforge/clutterforge.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { cf_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

struct Space {
  cf_subspace* p = nullptr;
  ~Space() { cf_subspace_free(p); }
};

}  // namespace

TEST_CASE("status names line up with the library's error codes") {
  CHECK(std::string(cf_status_name(CF_OK)) == "Ok");
  CHECK(std::string(cf_status_name(CF_NOT_PRIME_POWER)) == "NotPrimePower");
  CHECK(std::string(cf_status_name(CF_PARSE_ERROR)) == "ParseError");
  CHECK(std::string(cf_status_name(CF_INTERNAL)) == "Internal");
  CHECK(std::string(cf_status_name(CF_INVALID_ARGUMENT)) == "InvalidArgument");
}

TEST_CASE("field tables and prime power errors") {
  Str out;
  REQUIRE(cf_field_tables(4, CF_JSON, &out.p) == CF_OK);
  const auto j = nlohmann::json::parse(out.s());
  CHECK(j["add"][2][3] == 1);
  CHECK(j["mul"][2][2] == 3);
  Str bad;
  CHECK(cf_field_tables(6, CF_TEXT, &bad.p) == CF_NOT_PRIME_POWER);
  CHECK(bad.p == nullptr);
  CHECK(std::string(cf_last_error()).find('6') != std::string::npos);
}

TEST_CASE("parse errors carry a position") {
  Space s;
  CHECK(cf_subspace_parse("4 3\n1 1 x\n", &s.p) == CF_PARSE_ERROR);
  CHECK(std::string(cf_last_error()).find("line 2") != std::string::npos);
  CHECK(cf_subspace_parse(nullptr, &s.p) == CF_INVALID_ARGUMENT);
}

TEST_CASE("analysis of the GF(4) zero-sum plane") {
  Space s;
  REQUIRE(cf_subspace_parse(R"({"q":4,"n":3,"generators":[[1,1,0],[1,0,1]]})", &s.p) == CF_OK);
  CHECK(cf_subspace_q(s.p) == 4);
  CHECK(cf_subspace_n(s.p) == 3);
  CHECK(cf_subspace_dim(s.p) == 2);
  Str out;
  int unknown = -1;
  REQUIRE(cf_analyze(s.p, CF_ANALYZE_IDEAL | CF_ANALYZE_MINORS, nullptr, CF_JSON, &out.p, &unknown) == CF_OK);
  CHECK(unknown == 0);
  const auto j = nlohmann::json::parse(out.s());
  CHECK(j["clutter"]["members"] == 16);
  CHECK(j["ideal"]["verdict"] == "true");
  CHECK(j["minors"]["Q6"]["verdict"] == "false");

  Str check;
  int ok = 0;
  REQUIRE(cf_check_certificate(out.s().c_str(), nullptr, CF_TEXT, &check.p, &ok) == CF_OK);
  CHECK(ok == 1);
}

TEST_CASE("a starved budget yields unknown verdicts, not errors") {
  Space s;
  REQUIRE(cf_subspace_parse("4 3\n1 1 0\n1 0 1\n", &s.p) == CF_OK);
  cf_budget b;
  cf_budget_default(&b);
  b.vertex_enum_ground = 4;
  Str out;
  int unknown = 0;
  REQUIRE(cf_analyze(s.p, CF_ANALYZE_IDEAL, &b, CF_TEXT, &out.p, &unknown) == CF_OK);
  CHECK(unknown == 1);
  CHECK(out.s().find("UNKNOWN") != std::string::npos);
}

TEST_CASE("theorem reports and agreement flag") {
  Space s;
  REQUIRE(cf_subspace_parse("3 3\n1 0 1\n0 1 2\n", &s.p) == CF_OK);
  Str out;
  int agreement = 0;
  REQUIRE(cf_verify_theorem(s.p, "1.1", nullptr, CF_JSON, &out.p, &agreement) == CF_OK);
  CHECK(agreement == 1);
  Str wrong;
  CHECK(cf_verify_theorem(s.p, "1.2", nullptr, CF_JSON, &wrong.p, &agreement) == CF_WRONG_FIELD_CLASS);
  CHECK(cf_verify_theorem(s.p, "2.9", nullptr, CF_JSON, &wrong.p, &agreement) == CF_PARSE_ERROR);

  int ok = 0;
  Str check;
  REQUIRE(cf_check_certificate(out.s().c_str(), nullptr, CF_JSON, &check.p, &ok) == CF_OK);
  CHECK(ok == 1);
  auto doc = nlohmann::json::parse(out.s());
  doc["instance"]["generators"] = {{1, 0, 0}};
  Str check2;
  REQUIRE(cf_check_certificate(doc.dump().c_str(), nullptr, CF_JSON, &check2.p, &ok) == CF_OK);
  CHECK(ok == 0);
}

TEST_CASE("sweep through the C interface") {
  uint64_t count = 0;
  REQUIRE(cf_subspace_count(3, 3, &count) == CF_OK);
  CHECK(count == 28);
  Str csv, summary;
  uint64_t disagree = 9, unknown = 9;
  REQUIRE(cf_sweep(3, 3, "1.1", 2, nullptr, &csv.p, &summary.p, &disagree, &unknown) == CF_OK);
  CHECK(summary.s() == "subspaces=28 agree=28 disagree=0 unknown=0");
  CHECK(disagree == 0);
  CHECK(unknown == 0);
  std::size_t lines = 0;
  for (char c : csv.s()) lines += c == '\n';
  CHECK(lines == 29);
  CHECK(cf_sweep(6, 2, "1.1", 1, nullptr, nullptr, nullptr, nullptr, nullptr) == CF_NOT_PRIME_POWER);
  CHECK(cf_sweep(4, 2, "1.1", 1, nullptr, nullptr, nullptr, nullptr, nullptr) == CF_WRONG_FIELD_CLASS);
  cf_budget tight;
  cf_budget_default(&tight);
  tight.max_points = 10;
  CHECK(cf_sweep(3, 3, "1.1", 1, &tight, nullptr, nullptr, nullptr, nullptr) == CF_BUDGET_EXCEEDED);
}

TEST_CASE("witness, localization and matroid round trips") {
  Space s;
  REQUIRE(cf_subspace_zero_sum(8, 3, &s.p) == CF_OK);
  const int alpha[] = {1, 0, 0};
  Str w;
  REQUIRE(cf_witness(s.p, "c5sq", alpha, 3, -1, CF_JSON, &w.p) == CF_OK);
  const auto j = nlohmann::json::parse(w.s());
  CHECK(j["target"] == "C5sq");
  CHECK(j["choices"]["display"].size() == 5);
  int ok = 0;
  Str check;
  REQUIRE(cf_check_certificate(w.s().c_str(), nullptr, CF_TEXT, &check.p, &ok) == CF_OK);
  CHECK(ok == 1);

  const int inside[] = {1, 1, 0};
  Str bad;
  CHECK(cf_witness(s.p, "c5sq", inside, 3, -1, CF_JSON, &bad.p) == CF_PRECONDITION_VIOLATED);
  CHECK(cf_witness(s.p, "c5sq", alpha, 2, -1, CF_JSON, &bad.p) == CF_DIMENSION_MISMATCH);
  CHECK(cf_witness(s.p, "u24", nullptr, 0, -1, CF_JSON, &bad.p) == CF_WRONG_SHAPE);
  CHECK(cf_witness(s.p, "nope", nullptr, 0, -1, CF_JSON, &bad.p) == CF_PARSE_ERROR);

  Str prof;
  REQUIRE(cf_localize(s.p, alpha, 3, CF_JSON, &prof.p) == CF_OK);
  const auto p = nlohmann::json::parse(prof.s());
  CHECK(p["singletons"].size() == 3);
  CHECK(p["components"].size() == 3);

  Str m;
  REQUIRE(cf_matroid(s.p, CF_JSON, &m.p) == CF_OK);
  const auto mj = nlohmann::json::parse(m.s());
  CHECK(mj["circuits"].size() == 3);
  CHECK(mj["rank"] == 1);
}

TEST_CASE("malformed certificate documents") {
  Str out;
  int ok = 1;
  CHECK(cf_check_certificate("{not json", nullptr, CF_TEXT, &out.p, &ok) == CF_PARSE_ERROR);
  CHECK(cf_check_certificate("{}", nullptr, CF_TEXT, &out.p, &ok) != CF_OK);
}
