/* C interface to the clutterforge library.
 *
 * Every function returns a cf_status. Strings handed back through char**
 * are allocated by the library and must be released with cf_string_free.
 * On failure the message for the calling thread is available from
 * cf_last_error until the next call on that thread. */
#ifndef CLUTTERFORGE_H
#define CLUTTERFORGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define CF_API __attribute__((visibility("default")))
#else
#define CF_API
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_NOT_PRIME_POWER,
  CF_UNSUPPORTED,
  CF_DIVISION_BY_ZERO,
  CF_DIMENSION_MISMATCH,
  CF_TOO_LARGE,
  CF_FIELD_MISMATCH,
  CF_BAD_INDEX,
  CF_NOT_CONNECTED_COMPONENT,
  CF_OVERLAP,
  CF_BUDGET_EXCEEDED,
  CF_PRECONDITION_VIOLATED,
  CF_WRONG_SHAPE,
  CF_WRONG_FIELD,
  CF_WRONG_FIELD_CLASS,
  CF_NO_SERIES_PAIR,
  CF_PARSE_ERROR,
  CF_VERIFICATION_FAILED,
  CF_INTERNAL,
  CF_INVALID_ARGUMENT
} cf_status;

typedef enum cf_format { CF_TEXT = 0, CF_JSON = 1 } cf_format;

/* Search caps. Fill with cf_budget_default and adjust; NULL means defaults
 * (which honour the CLUTTERFORGE_BUDGET environment variable). */
typedef struct cf_budget {
  uint64_t search_nodes;
  uint32_t vertex_enum_ground;
  uint32_t isomorphism_ground;
  uint32_t matroid_minor_ground;
  uint32_t graph_minor_edges;
  uint64_t max_points;
} cf_budget;

typedef struct cf_subspace cf_subspace;

CF_API const char* cf_version(void);
CF_API const char* cf_status_name(cf_status status);
CF_API const char* cf_last_error(void);
CF_API void cf_string_free(char* s);
CF_API void cf_budget_default(cf_budget* out);

/* Addition and multiplication tables of GF(q). */
CF_API cf_status cf_field_tables(int q, cf_format format, char** out);

/* Text ("q n" then one generator per line) or JSON input. */
CF_API cf_status cf_subspace_parse(const char* input, cf_subspace** out);
CF_API cf_status cf_subspace_zero_sum(int q, int n, cf_subspace** out);
CF_API void cf_subspace_free(cf_subspace* s);
CF_API int cf_subspace_q(const cf_subspace* s);
CF_API int cf_subspace_n(const cf_subspace* s);
CF_API int cf_subspace_dim(const cf_subspace* s);
CF_API cf_status cf_subspace_describe(const cf_subspace* s, char** out);

enum {
  CF_ANALYZE_IDEAL = 1,
  CF_ANALYZE_MFMC = 2,
  CF_ANALYZE_MINORS = 4,
  CF_ANALYZE_STRUCTURE = 8
};

/* out_unknown (optional) receives the number of verdicts left undecided by
 * the budget. */
CF_API cf_status cf_analyze(const cf_subspace* s, unsigned flags, const cf_budget* budget, cf_format format,
                            char** out, int* out_unknown);

/* theorem is "1.1", "1.2", "1.3" or "1.4". out_agreement (optional)
 * receives 1 when all three verdicts agree, 0 when some are undecided and
 * -1 when two known verdicts differ. */
CF_API cf_status cf_verify_theorem(const cf_subspace* s, const char* theorem, const cf_budget* budget,
                                   cf_format format, char** out, int* out_agreement);

CF_API cf_status cf_subspace_count(int q, int n, uint64_t* out);

/* One CSV row per subspace of GF(q)^n in canonical order; the summary line
 * counts agreements, disagreements and undecided rows. */
CF_API cf_status cf_sweep(int q, int n, const char* theorem, int jobs, const cf_budget* budget, char** out_csv,
                          char** out_summary, uint64_t* out_disagree, uint64_t* out_unknown);

/* kind is "c5sq", "u24" or "k4e". alpha (c5sq only, may be NULL) holds n
 * field elements; seed < 0 keeps the deterministic choices. */
CF_API cf_status cf_witness(const cf_subspace* s, const char* kind, const int* alpha, size_t alpha_len, int64_t seed,
                            cf_format format, char** out);

CF_API cf_status cf_localize(const cf_subspace* s, const int* alpha, size_t alpha_len, cf_format format, char** out);

/* Circuits, components and block shapes of Matroid(S). */
CF_API cf_status cf_matroid(const cf_subspace* s, cf_format format, char** out);

/* Re-validates a report, analysis or witness document. out_ok receives 1
 * when every certificate checks out. */
CF_API cf_status cf_check_certificate(const char* document, const cf_budget* budget, cf_format format, char** out,
                                      int* out_ok);

#ifdef __cplusplus
}
#endif

#endif
