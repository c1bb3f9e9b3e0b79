#ifndef ROUGHMEASURE_H
#define ROUGHMEASURE_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// How `rm_metrics_rates` reads the rate denominators.
typedef enum RmMetricMode {
  // Rates over predicted totals.
  RM_METRIC_MODE_PAPER = 0,
  // Rates over actual-class totals.
  RM_METRIC_MODE_CONVENTIONAL = 1,
  // Both modes plus the divergence report.
  RM_METRIC_MODE_BOTH = 2,
} RmMetricMode;

// Outcome of a call.
typedef enum RmStatus {
  RM_STATUS_OK = 0,
  // A required pointer argument was NULL.
  RM_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  RM_STATUS_INVALID_UTF8 = 2,
  // Malformed input: bad JSON, unknown object, unknown operator, ...
  RM_STATUS_INVALID_INPUT = 3,
  // An operation's precondition does not hold for the given input.
  RM_STATUS_PRECONDITION = 4,
  // The input exceeds an exhaustive-enumeration cap.
  RM_STATUS_CAP_EXCEEDED = 5,
  // An internal error; the library state is unaffected.
  RM_STATUS_INTERNAL = 6,
} RmStatus;

// A granular approximation space (universe, granules, neighborhoods).
typedef struct RmSpace RmSpace;

// A finite structure with operation tables, ready for axiom checking.
typedef struct RmStructure RmStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL after a
// successful call. Valid until the next call on this thread; do not free.
const char *rm_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` is NULL or a string returned by this library and not yet freed.
void rm_string_free(char *s);

// Reads a granulation JSON document (`pairs`, `blocks` or `neighborhoods`).
//
// # Safety
// `json` is a NUL-terminated string; `out` is valid for writes.
enum RmStatus rm_space_from_json(const char *json, struct RmSpace **out);

// Releases a space. NULL is ignored.
//
// # Safety
// `space` is NULL or a handle from `rm_space_from_json` not yet freed.
void rm_space_free(struct RmSpace *space);

// Number of objects in the space's universe; 0 for NULL.
//
// # Safety
// `space` is NULL or a live handle.
size_t rm_space_len(const struct RmSpace *space);

// Applies the operator `op` (`l`, `u`, `ub`, `lk:K`, `uk:K`, `id`,
// `fix:FILE`) to `subset` (`{x1,x2}` or `x1,x2`) and writes the rendered
// result.
//
// # Safety
// String arguments are NUL-terminated; `space` is a live handle; `out` is
// valid for writes.
enum RmStatus rm_approx(const struct RmSpace *space,
                        const char *op,
                        const char *subset_text,
                        char **out);

// `nabla(x, a, b, c) = (x^a \ x^b)^c ∪ (x^b \ x^a)^c`, rendered.
//
// # Safety
// String arguments are NUL-terminated; `space` is a live handle; `out` is
// valid for writes.
enum RmStatus rm_nabla(const struct RmSpace *space,
                       const char *a,
                       const char *b,
                       const char *c,
                       const char *subset_text,
                       char **out);

// `amalg(x, a, b, c) = (x^b \ x^a)^c`, rendered.
//
// # Safety
// As for [`rm_nabla`].
enum RmStatus rm_amalg(const struct RmSpace *space,
                       const char *a,
                       const char *b,
                       const char *c,
                       const char *subset_text,
                       char **out);

// `finv(x, l1, ls, u1, us) = nabla(x, l1, ls, us) ∪ nabla(x, ls, l1, u1)`,
// rendered.
//
// # Safety
// As for [`rm_nabla`].
enum RmStatus rm_finv(const struct RmSpace *space,
                      const char *l1,
                      const char *ls,
                      const char *u1,
                      const char *us,
                      const char *subset_text,
                      char **out);

// Reads a structure JSON document (carrier, leq, constants, unary, binary).
//
// # Safety
// `json` is a NUL-terminated string; `out` is valid for writes.
enum RmStatus rm_structure_from_json(const char *json, struct RmStructure **out);

// Releases a structure. NULL is ignored.
//
// # Safety
// `structure` is NULL or a handle from `rm_structure_from_json` not yet freed.
void rm_structure_free(struct RmStructure *structure);

// Checks the comma-separated axiom `groups` (or `all`) and writes the JSON
// report. `*all_pass` is set to 1 when no axiom failed, else 0.
//
// # Safety
// `structure` is a live handle; `groups` is NUL-terminated; `report` and
// `all_pass` are valid for writes.
enum RmStatus rm_structure_check(const struct RmStructure *structure,
                                 const char *groups,
                                 char **report,
                                 int *all_pass);

// Classifier rates for the given confusion counts as a JSON document.
//
// # Safety
// `out` is valid for writes.
enum RmStatus rm_metrics_rates(uint64_t tp,
                               uint64_t fp,
                               uint64_t tn,
                               uint64_t fn_,
                               enum RmMetricMode mode,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROUGHMEASURE_H */
