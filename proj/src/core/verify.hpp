#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "budget.hpp"
#include "clutter.hpp"
#include "matroid.hpp"
#include "polyhedral.hpp"
#include "vspace.hpp"

namespace clutterforge {

using Json = nlohmann::json;

/// Every subspace of GF(q)^n exactly once, one per RREF matrix, sorted by
/// canonical basis. Throws BudgetExceeded when the count exceeds
/// budget.max_points.
std::vector<Subspace> enumerate_subspaces(int q, int n, const Budget& budget = default_budget());

/// Number of subspaces of GF(q)^n (sum of Gaussian binomials), saturating.
std::uint64_t subspace_count(int q, int n);

enum class Theorem { OddField, Field4, EvenFieldAbove4, Mfmc };

const char* theorem_id(Theorem t);  // "1.1" .. "1.4"
std::optional<Theorem> parse_theorem(const std::string& id);
/// Whether the field class of q matches the theorem's hypothesis.
bool theorem_applies(Theorem t, int q);

enum class Verdict { False, True, Unknown };
const char* verdict_name(Verdict v);

struct Condition {
  std::string statement;
  Verdict verdict = Verdict::Unknown;
  std::string method;
  Json certificate;
};

struct TheoremReport {
  Theorem theorem = Theorem::Mfmc;
  std::string instance;
  Json space;  // q, n, generators
  Condition i, ii, iii;

  bool agreement() const;     // all three verdicts known and equal
  bool disagreement() const;  // two known verdicts differ
  bool has_unknown() const;
  Json to_json() const;
};

/// Evaluates the three conditions of the theorem independently. Budget
/// exhaustion turns the affected condition into Unknown. Throws
/// WrongFieldClass when q does not fit the theorem.
TheoremReport verify_theorem(const Subspace& s, Theorem t, const Budget& budget = default_budget());

struct SweepSummary {
  std::size_t total = 0, agree = 0, disagree = 0, unknown = 0;
};

struct SweepResult {
  std::vector<TheoremReport> reports;  // in enumerate_subspaces order
  SweepSummary summary;
};

/// verify_theorem over every subspace of GF(q)^n using `jobs` threads.
SweepResult sweep(int q, int n, Theorem t, int jobs = 1, const Budget& budget = default_budget());

std::string sweep_csv_header();
std::string sweep_csv_row(std::size_t index, const TheoremReport& r);
std::string sweep_summary_line(const SweepSummary& s);

/// Re-validates every certificate in a report, analysis or witness
/// document against its "instance". Searches that prove absence are
/// re-run; positive evidence is checked directly.
struct CertificateCheck {
  std::string path;  // JSON pointer of the certificate
  std::string kind;
  bool ok = false;
  bool rerun = false;  // validated by repeating the search
  std::string message;
};
std::vector<CertificateCheck> check_certificate(const Json& doc, const Budget& budget = default_budget());

/// A point d of S outside {a,b,c} with d_l in {a_l,b_l,c_l} for every l and
/// at least two of d_i = c_i, d_j = a_j, d_k = b_k. Coordinates 0-based.
/// Throws PreconditionViolated unless a,b,c are distinct points of S with
/// a_i = b_i != c_i, b_j = c_j != a_j, c_k = a_k != b_k.
std::optional<Point> triple_condition_probe(const Subspace& s, const Point& a, const Point& b, const Point& c, int i,
                                            int j, int k);

/// Delete / contract steps on named ground elements.
struct ChainStep {
  enum class Op { Delete, Contract };
  Op op = Op::Delete;
  std::vector<GroundElement> elements;
  std::string note;
};

struct WitnessChain {
  Builtin target = Builtin::Delta3;
  Json instance;
  std::vector<ChainStep> steps;
  Json choices;              // the free choices made along the way
  std::vector<int> iso;      // target element -> element of the replayed clutter
  Clutter result;
  Json to_json() const;
};

Clutter replay(const Clutter& host, const std::vector<ChainStep>& steps);

/// The deletion / contraction that exposes Delta3 when the probe for the
/// triple comes back empty; the chain is replayed before returning.
WitnessChain triple_delta3_chain(const Subspace& s, const Point& a, const Point& b, const Point& c, int i, int j,
                                 int k);

/// Delta3 chains for spaces whose matroid is U_{2,4} (q even) or the cycle
/// matroid of K4/e (q even, q >= 4). WrongShape / WrongField otherwise.
WitnessChain delta3_witness_u24(const Subspace& s);
WitnessChain delta3_witness_k4e(const Subspace& s);

struct C5sqOptions {
  std::optional<Point> alpha;          // defaults to the smallest point outside S
  std::optional<std::uint64_t> seed;   // randomizes a, b (and alpha when unset)
};

/// C5sq chain for spaces over GF(2^k), k >= 3, whose matroid is that of A3:
/// localize at alpha, keep seven elements, contract two. The choices carry
/// alpha, sigma, a, b and the 5x7 incidence matrix before the last step.
WitnessChain c5sq_witness(const Subspace& s, const C5sqOptions& options = {});

/// Coordinate scaling lambda with S = {x : sum lambda_i x_i = 0}, for spaces
/// whose matroid is that of A_n. WrongShape otherwise.
std::vector<Element> zero_sum_scaling(const Subspace& s);

struct LocalizationComponent {
  std::vector<Element> beta;  // beta[i]; the other side is beta[i] + sigma
  std::vector<std::pair<GroundElement, GroundElement>> edges;
};

struct LocalizationProfile {
  Point alpha;  // in the coordinates of the normalized space {sum x = 0}
  Element sigma = 0;
  std::vector<Element> scaling;
  std::vector<GroundElement> singletons;
  std::vector<LocalizationComponent> components;
  std::vector<std::vector<GroundElement>> residual;  // members of size >= 3
  std::size_t member_count = 0;
  Json to_json(const Field& f) const;
};

/// Members of local(S, alpha) split by size, with the size-2 graph
/// decomposed and checked against the predicted shape; a mismatch throws
/// VerificationFailed. alpha is given in S's coordinates.
LocalizationProfile localization_profile(const Subspace& s, const Point& alpha);

struct SeriesPair {
  std::vector<int> series_class;
  int dropped = -1;
  bool ideal = false;
  bool ideal_projection = false;
};

/// Drops one element of a series class and compares idealness of the two
/// multipartite clutters; NoSeriesPair when every series class is a
/// singleton, VerificationFailed when the verdicts differ.
SeriesPair series_extension_pair(const Subspace& s, const Budget& budget = default_budget());

struct ReplicationReport {
  bool packing_property = false;
  std::optional<MinorSpec> nonpacking_minor;
  bool disjoint_support_basis = false;
  std::optional<bool> ideal;            // absent past the polyhedral budget
  bool minimally_nonpacking = false;
  std::optional<Weight> tau;            // when minimally non-packing
  std::optional<bool> isomorphic_to_q6;
  std::vector<std::string> notes;
  Json to_json() const;
};

/// Packing property implies a disjoint-support basis; an ideal minimally
/// non-packing mult(S) must have covering number 2 and be Q6. Violations
/// throw VerificationFailed.
ReplicationReport replication_tau2_report(const Subspace& s, const Budget& budget = default_budget());

struct AnalyzeOptions {
  bool ideal = false;
  bool mfmc = false;
  bool minors = false;
  bool structure = false;
};

/// Combined analysis used by the command-line front end.
Json analyze(const Subspace& s, const AnalyzeOptions& options, const Budget& budget = default_budget());

/// Human-readable rendering of analyze / verify_theorem output.
std::string render_analysis(const Json& analysis);
std::string render_report(const TheoremReport& r);

GroundElement parse_element_label(const std::string& label);

}  // namespace clutterforge
