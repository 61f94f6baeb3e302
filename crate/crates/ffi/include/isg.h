#ifndef ISG_H
#define ISG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IsgStatus {
  ISG_STATUS_OK = 0,
  /**
   * A mathematical assertion failed.
   */
  ISG_STATUS_ASSERTION_FAILED = 1,
  ISG_STATUS_INPUT_ERROR = 2,
  ISG_STATUS_NULL_POINTER = 3,
  ISG_STATUS_OUT_OF_RANGE = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  ISG_STATUS_INTERNAL = 5,
} IsgStatus;

/**
 * The graph inverse semigroup of a finite directed graph.
 */
typedef struct IsgGraph IsgGraph;

/**
 * A finite inverse semigroup given by a table or generators.
 */
typedef struct IsgSemigroup IsgSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *isg_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void isg_string_free(char *s);

/**
 * Builds a finite semigroup from a JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IsgStatus isg_semigroup_from_json(const char *json, struct IsgSemigroup **out);

/**
 * # Safety
 * `h` must be null or a handle from [`isg_semigroup_from_json`], not yet freed.
 */
void isg_semigroup_free(struct IsgSemigroup *h);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum IsgStatus isg_semigroup_size(const struct IsgSemigroup *h, size_t *out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum IsgStatus isg_semigroup_product(const struct IsgSemigroup *h, size_t a, size_t b, size_t *out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum IsgStatus isg_semigroup_star(const struct IsgSemigroup *h, size_t a, size_t *out);

/**
 * Writes whether `a ≤ b` in the natural partial order.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum IsgStatus isg_semigroup_natural_leq(const struct IsgSemigroup *h,
                                         size_t a,
                                         size_t b,
                                         bool *out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum IsgStatus isg_semigroup_is_e_unitary(const struct IsgSemigroup *h, bool *out);

/**
 * Builds a graph inverse semigroup from `{"vertices", "edges"}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IsgStatus isg_graph_from_json(const char *json, struct IsgGraph **out);

/**
 * # Safety
 * `h` must be null or a handle from [`isg_graph_from_json`], not yet freed.
 */
void isg_graph_free(struct IsgGraph *h);

/**
 * Scans fibers over paths of length at most `max_len` and writes the number
 * of nonzero cross products between distinct edges. Returns
 * `ISG_STATUS_ASSERTION_FAILED` when that number is positive.
 *
 * # Safety
 * `h` must be a live handle and `violations` a valid pointer.
 */
enum IsgStatus isg_graph_orthogonality(const struct IsgGraph *h,
                                       size_t max_len,
                                       size_t *violations);

/**
 * Smallest eigenvalue of the truncated shift expectation `e − b − b*` on
 * `{0..window}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum IsgStatus isg_shift_min_eig(size_t window, double *out);

/**
 * Operator norm lower bound for the same truncation.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum IsgStatus isg_shift_norm_bound(size_t window, double *out);

/**
 * Runs any CLI command. `job_json` is
 * `{"command", "input"?, "window"?, "length"?, "seed"?, "tol"?}`; the JSON
 * report is written to `*report` (free with [`isg_string_free`]) whenever
 * the job could be parsed.
 *
 * # Safety
 * `job_json` must be a NUL-terminated string and `report` a valid pointer.
 */
enum IsgStatus isg_run_command(const char *job_json, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISG_H */
