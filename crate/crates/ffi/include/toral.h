#ifndef TORAL_H
#define TORAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ToralStatus {
  TORAL_STATUS_OK = 0,
  TORAL_STATUS_NULL_POINTER = 1,
  TORAL_STATUS_INVALID_UTF8 = 2,
  TORAL_STATUS_PARSE = 3,
  TORAL_STATUS_CONFIG = 4,
  TORAL_STATUS_CONTRACT = 5,
  TORAL_STATUS_NOT_APPLICABLE = 6,
  TORAL_STATUS_CROSS_VALIDATION = 7,
  TORAL_STATUS_INTERNAL = 8,
  TORAL_STATUS_PANIC = 9,
} ToralStatus;

/**
 * The result of a census run.
 */
typedef struct ToralCensus ToralCensus;

/**
 * A parsed torus spec.
 */
typedef struct ToralTorus ToralTorus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *toral_last_error_message(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void toral_string_free(char *s);

/**
 * Parses a spec such as `"u½ r^3 u0"` or `"r2"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ToralStatus toral_torus_parse(const char *text, struct ToralTorus **out);

/**
 * Builds the rank-`n` torus with `m` unramified factors at ½, `l` ramified
 * factors and `n - m - l` unramified factors at 0.
 *
 * # Safety
 * `out` must be writable.
 */
enum ToralStatus toral_torus_from_counts(size_t m, size_t l, size_t n, struct ToralTorus **out);

/**
 * # Safety
 * `t` must come from this library and not have been freed. Null is ignored.
 */
void toral_torus_free(struct ToralTorus *t);

/**
 * `m` and `l` as in [`toral_torus_from_counts`]; `n` is the rank.
 *
 * # Safety
 * `t` must be a live handle; the outputs must be writable.
 */
enum ToralStatus toral_torus_counts(const struct ToralTorus *t, size_t *m, size_t *l, size_t *n);

/**
 * Canonical text form, e.g. `"u½ r^3 u0"`. Free with [`toral_string_free`].
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_torus_to_string(const struct ToralTorus *t, char **out);

/**
 * Simplicial radius of the fixed region about the attachment point.
 *
 * # Safety
 * `t` must be a live handle; the outputs must be writable.
 */
enum ToralStatus toral_torus_radius(const struct ToralTorus *t, int64_t *num, int64_t *den);

/**
 * Whether the fixed region is the closure of a single facet.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_torus_single_facet(const struct ToralTorus *t, bool *out);

/**
 * Runs the census at depth `s0 = s0_num / s0_den`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_census_run(const struct ToralTorus *t,
                                  int64_t s0_num,
                                  int64_t s0_den,
                                  struct ToralCensus **out);

/**
 * # Safety
 * `c` must come from this library and not have been freed. Null is ignored.
 */
void toral_census_free(struct ToralCensus *c);

/**
 * Number of vertex types, `n + 1` for `Sp_2n`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_census_type_count(const struct ToralCensus *c, size_t *out);

/**
 * Vertices of the given type in the fixed region.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_census_count(const struct ToralCensus *c, size_t vertex_type, size_t *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_census_total(const struct ToralCensus *c, size_t *out);

/**
 * Whether `s0` exceeds the fixed-region radius.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_census_applicable(const struct ToralCensus *c, bool *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_census_strong_unicity(const struct ToralCensus *c, bool *out);

/**
 * The report as pretty JSON. Free with [`toral_string_free`].
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum ToralStatus toral_census_to_json(const struct ToralCensus *c, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORAL_H */
