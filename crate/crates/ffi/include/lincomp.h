#ifndef LINCOMP_H
#define LINCOMP_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LincompStatus {
  LINCOMP_STATUS_OK = 0,
  LINCOMP_STATUS_NULL_POINTER = 1,
  LINCOMP_STATUS_INVALID_UTF8 = 2,
  // The input failed to parse or validate.
  LINCOMP_STATUS_INVALID_INPUT = 3,
  // A computation rejected its inputs (shape or field mismatch, budget exhausted).
  LINCOMP_STATUS_COMPUTATION = 4,
  // An internal invariant failed.
  LINCOMP_STATUS_PANIC = 5,
} LincompStatus;

typedef enum LincompVerdict {
  LINCOMP_VERDICT_SOLVABLE = 0,
  LINCOMP_VERDICT_UNSOLVABLE = 1,
} LincompVerdict;

typedef enum LincompClass {
  LINCOMP_CLASS_IDENTITY_LIKE = 0,
  LINCOMP_CLASS_SUM_LIKE = 1,
  LINCOMP_CLASS_ALL_UNITS = 2,
  LINCOMP_CLASS_HAS_ZERO = 3,
} LincompClass;

typedef enum LincompOutcome {
  LINCOMP_OUTCOME_SOLVED = 0,
  LINCOMP_OUTCOME_UNSOLVABLE = 1,
  LINCOMP_OUTCOME_SOLVABLE_NO_CONSTRUCTOR = 2,
  LINCOMP_OUTCOME_CUT_VIOLATION = 3,
} LincompOutcome;

typedef struct LincompCode LincompCode;

typedef struct LincompNetwork LincompNetwork;

typedef struct LincompTarget LincompTarget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next failing call on this thread.
const char *lincomp_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void lincomp_string_free(char *s);

// Parses a network JSON document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LincompStatus lincomp_network_parse(const char *json, struct LincompNetwork **out);

// # Safety
// `net` must be NULL or a handle from [`lincomp_network_parse`] not yet freed.
void lincomp_network_free(struct LincompNetwork *net);

// # Safety
// `net` must be a live handle; `out` must be writable.
enum LincompStatus lincomp_network_num_sources(const struct LincompNetwork *net, size_t *out);

// # Safety
// `net` must be a live handle; `out` must be writable.
enum LincompStatus lincomp_network_num_edges(const struct LincompNetwork *net, size_t *out);

// Canonical JSON form, edges in topological order.
//
// # Safety
// `net` must be a live handle; `out` must be writable.
enum LincompStatus lincomp_network_to_json(const struct LincompNetwork *net, char **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LincompStatus lincomp_target_parse(const char *json, struct LincompTarget **out);

// # Safety
// `t` must be NULL or a handle from [`lincomp_target_parse`] not yet freed.
void lincomp_target_free(struct LincompTarget *t);

// Number of rows `l` and columns `s`.
//
// # Safety
// `t` must be a live handle; `out_l` and `out_s` must be writable.
enum LincompStatus lincomp_target_shape(const struct LincompTarget *t,
                                        size_t *out_l,
                                        size_t *out_s);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum LincompStatus lincomp_target_to_json(const struct LincompTarget *t, char **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LincompStatus lincomp_code_parse(const char *json, struct LincompCode **out);

// # Safety
// `code` must be NULL or a handle from this library not yet freed.
void lincomp_code_free(struct LincompCode *code);

// # Safety
// `code` must be a live handle; `out` must be writable.
enum LincompStatus lincomp_code_to_json(const struct LincompCode *code, char **out);

// Min-cut ratio as a reduced fraction `num / den`.
//
// # Safety
// Handles must be live; `out_num` and `out_den` must be writable.
enum LincompStatus lincomp_mincut(const struct LincompNetwork *net,
                                  const struct LincompTarget *t,
                                  size_t *out_num,
                                  size_t *out_den);

// Gröbner-basis solvability verdict.
//
// # Safety
// Handles must be live; `out` must be writable.
enum LincompStatus lincomp_solvable(const struct LincompNetwork *net,
                                    const struct LincompTarget *t,
                                    enum LincompVerdict *out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum LincompStatus lincomp_classify(const struct LincompTarget *t, enum LincompClass *out);

// Runs the synthesis dispatcher. On `Solved`, `*out_code` receives a new code
// handle; otherwise it is set to NULL.
//
// # Safety
// Handles must be live; `out_outcome` and `out_code` must be writable.
enum LincompStatus lincomp_synthesize(const struct LincompNetwork *net,
                                      const struct LincompTarget *t,
                                      uint64_t seed,
                                      enum LincompOutcome *out_outcome,
                                      struct LincompCode **out_code);

// Whether `code` computes `t` on `net` (transfer-matrix equality).
//
// # Safety
// Handles must be live; `out` must be writable.
enum LincompStatus lincomp_is_solution(const struct LincompNetwork *net,
                                       const struct LincompCode *code,
                                       const struct LincompTarget *t,
                                       bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINCOMP_H */
