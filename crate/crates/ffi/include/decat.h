#ifndef DECAT_H
#define DECAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DecatStatus {
  DECAT_STATUS_OK = 0,
  DECAT_STATUS_NULL_POINTER = 1,
  DECAT_STATUS_INVALID_UTF8 = 2,
  DECAT_STATUS_PARSE = 3,
  /**
   * weights, shapes or bounds that do not fit together
   */
  DECAT_STATUS_DOMAIN = 4,
  DECAT_STATUS_NON_INTEGRAL = 5,
  DECAT_STATUS_SIZE_GUARD = 6,
  DECAT_STATUS_UNKNOWN_SUITE = 7,
  DECAT_STATUS_PANIC = 8,
} DecatStatus;

/**
 * Opaque finite linear category.
 */
typedef struct DecatCategory DecatCategory;

/**
 * Opaque symmetric function.
 */
typedef struct DecatSym DecatSym;

/**
 * Opaque morphism of the trace category.
 */
typedef struct DecatTrace DecatTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the next call.
 */
const char *decat_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void decat_string_free(char *s);

/**
 * Parses `[{"partition": [..], "coeff": ".."}, ...]`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum DecatStatus decat_sym_from_json(const char *json, struct DecatSym **out);

/**
 * # Safety
 * Handles must come from this library; `out` must be valid.
 */
enum DecatStatus decat_sym_mul(const struct DecatSym *x,
                               const struct DecatSym *y,
                               struct DecatSym **out);

/**
 * # Safety
 * `x` must come from this library; `out` must be valid.
 */
enum DecatStatus decat_sym_to_json(const struct DecatSym *x, char **out);

/**
 * # Safety
 * `x` must be null or a handle from this library, not freed before.
 */
void decat_sym_free(struct DecatSym *x);

/**
 * Parses `{"source", "target", "terms": [{b, mu, tau, a, lambda, coeff}]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum DecatStatus decat_trace_from_json(const char *json, struct DecatTrace **out);

/**
 * `x ∘ y`, with `y` applied first.
 *
 * # Safety
 * Handles must come from this library; `out` must be valid.
 */
enum DecatStatus decat_trace_compose(const struct DecatTrace *x,
                                     const struct DecatTrace *y,
                                     struct DecatTrace **out);

/**
 * # Safety
 * `x` must come from this library; `out` must be valid.
 */
enum DecatStatus decat_trace_to_json(const struct DecatTrace *x, char **out);

/**
 * Image in the current algebra, as Garland-basis JSON.
 *
 * # Safety
 * `x` must come from this library; `out` must be valid.
 */
enum DecatStatus decat_trace_to_current_json(const struct DecatTrace *x, char **out);

/**
 * # Safety
 * `x` must be null or a handle from this library, not freed before.
 */
void decat_trace_free(struct DecatTrace *x);

/**
 * Garland normal form of a word such as `E0 F1^(2)` acting on `1_n`.
 *
 * # Safety
 * `word` must be a nul-terminated string and `out` a valid pointer.
 */
enum DecatStatus decat_current_normal_form(const char *word, int64_t n, char **out);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum DecatStatus decat_category_from_json(const char *json, struct DecatCategory **out);

/**
 * `HH_0 .. HH_{max_degree - 1}` as a JSON array of `{free, torsion}`.
 *
 * # Safety
 * `c` must come from this library; `out` must be valid.
 */
enum DecatStatus decat_category_hh_json(const struct DecatCategory *c,
                                        size_t max_degree,
                                        char **out);

/**
 * # Safety
 * `c` must be null or a handle from this library, not freed before.
 */
void decat_category_free(struct DecatCategory *c);

/**
 * Runs a verification suite. `bounds` is null or a JSON object of integer
 * overrides. `passed` receives 1 or 0, `report` the JSON report.
 *
 * # Safety
 * `name` must be a nul-terminated string, `bounds` null or one, and the
 * output pointers valid.
 */
enum DecatStatus decat_run_suite(const char *name,
                                 const char *bounds,
                                 int32_t *passed,
                                 char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DECAT_H */
