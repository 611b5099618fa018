#ifndef PKARR_H
#define PKARR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * `pkarr_check_json` flag: also report the double-points-as-singular convention.
 */
#define PKARR_CHECK_DOUBLES_AS_SINGULAR 1

/**
 * `pkarr_check_json` flag: fail unless the classification is `pk_candidate_equality`.
 */
#define PKARR_CHECK_REQUIRE_EQUALITY 2

/**
 * `pkarr_check_json` flag: `infeasible` and `limit_cusp` count as failures.
 */
#define PKARR_CHECK_REQUIRE_FEASIBLE 4

/**
 * Result of every call.
 */
typedef enum PkarrStatus {
  PKARR_STATUS_OK = 0,
  PKARR_STATUS_NULL_POINTER = 1,
  PKARR_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or an unreadable value.
   */
  PKARR_STATUS_PARSE_ERROR = 3,
  /**
   * Well-formed input that the library rejects (proportional lines, unknown entry, bad parameter...).
   */
  PKARR_STATUS_INVALID_INPUT = 4,
  PKARR_STATUS_WEIGHTS_MISSING = 5,
  PKARR_STATUS_INADMISSIBLE_WEIGHTS = 6,
  /**
   * An internal consistency check failed.
   */
  PKARR_STATUS_INTERNAL = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  PKARR_STATUS_PANIC = 8,
} PkarrStatus;

/**
 * A line arrangement and, optionally, its weights.
 */
typedef struct PkarrArrangement PkarrArrangement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *pkarr_version(void);

/**
 * Message for the last failed call on this thread, or null after a successful call.
 * The pointer stays valid until the next call into the library on the same thread.
 */
const char *pkarr_last_error(void);

/**
 * Parses an arrangement file (`{"field": ..., "lines": [...], "weights": {...}}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PkarrStatus pkarr_arrangement_from_json(const char *json, struct PkarrArrangement **out);

/**
 * Builds a catalog arrangement with its default weights.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `params` must point to `n_params`
 * integers (or be null when `n_params` is 0) and `out` must be valid.
 */
enum PkarrStatus pkarr_catalog_build(const char *name,
                                     const int64_t *params,
                                     size_t n_params,
                                     struct PkarrArrangement **out);

/**
 * Number of lines in the arrangement.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum PkarrStatus pkarr_arrangement_line_count(const struct PkarrArrangement *h, size_t *out);

/**
 * Replaces the weights with a `{"line name": "p/q", ...}` map covering every line.
 *
 * # Safety
 * `h` must be a live handle and `json` a NUL-terminated string.
 */
enum PkarrStatus pkarr_arrangement_set_weights_json(struct PkarrArrangement *h, const char *json);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and not be used afterwards.
 */
void pkarr_arrangement_free(struct PkarrArrangement *h);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void pkarr_string_free(char *s);

/**
 * Intersection lattice, B-matrix, symmetric and Hirzebruch checks.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum PkarrStatus pkarr_lattice_json(const struct PkarrArrangement *h, char **out);

/**
 * Relation residuals, classification, Bogomolov-Gieseker value, pencil and cusp reports.
 * `passes` (nullable) receives whether the run passes under `flags`.
 *
 * # Safety
 * `h` must be a live handle, `out` a valid pointer, `passes` valid or null.
 */
enum PkarrStatus pkarr_check_json(const struct PkarrArrangement *h,
                                  uint32_t flags,
                                  char **out,
                                  bool *passes);

/**
 * Exact solution space of the weight relations and its interior.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum PkarrStatus pkarr_solve_json(const struct PkarrArrangement *h, char **out);

/**
 * Parabolic Chern data on the blow-up and stability margins. `n <= 0` picks the
 * stability threshold. `passes` (nullable) receives whether every margin is negative.
 *
 * # Safety
 * `h` must be a live handle, `out` a valid pointer, `passes` valid or null.
 */
enum PkarrStatus pkarr_parabolic_json(const struct PkarrArrangement *h,
                                      int64_t n,
                                      bool diagnostic,
                                      char **out,
                                      bool *passes);

/**
 * Verifies a connection file: residue solution space plus flatness and torsion checks.
 *
 * # Safety
 * `json` must be a NUL-terminated string, `out` a valid pointer, `passes` valid or null.
 */
enum PkarrStatus pkarr_connection_verify_json(const char *json, char **out, bool *passes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PKARR_H */
