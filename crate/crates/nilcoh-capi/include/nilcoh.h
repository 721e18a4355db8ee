#ifndef NILCOH_H
#define NILCOH_H

/* Generated from the nilcoh-capi Rust sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum NilcohStatus {
  NilcohStatus_Ok = 0,
  /**
   * A required pointer argument was NULL.
   */
  NilcohStatus_NullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  NilcohStatus_InvalidUtf8 = 2,
  /**
   * Malformed input: JSON schema, expression, or catalog name.
   */
  NilcohStatus_ParseError = 3,
  /**
   * The presentation violates the Jacobi identity.
   */
  NilcohStatus_InvalidAlgebra = 4,
  /**
   * The request is refused on mathematical grounds.
   */
  NilcohStatus_Unsupported = 5,
  /**
   * An internal invariant failed; please report.
   */
  NilcohStatus_InternalError = 6,
} NilcohStatus;

/**
 * Opaque handle to a validated-or-not Lie algebra presentation.
 */
typedef struct NilcohAlgebra NilcohAlgebra;

/**
 * Opaque handle to a computed cohomology ring.
 */
typedef struct NilcohRing NilcohRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the underlying library as a static NUL-terminated string.
 */
const char *nilcoh_version(void);

/**
 * Message for the most recent failure on this thread. Never NULL;
 * valid until the next failing call on the same thread.
 */
const char *nilcoh_last_error(void);

/**
 * Parse an algebra from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 * On `Ok`, `*out` owns a handle to release with `nilcoh_algebra_free`.
 */
enum NilcohStatus nilcoh_algebra_from_json(const char *json, struct NilcohAlgebra **out);

/**
 * Look up a built-in algebra, e.g. "heisenberg(3)" or "torus(4)".
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 * On `Ok`, `*out` owns a handle to release with `nilcoh_algebra_free`.
 */
enum NilcohStatus nilcoh_algebra_from_catalog(const char *name, struct NilcohAlgebra **out);

/**
 * Release an algebra handle. NULL is accepted and ignored.
 *
 * # Safety
 * `algebra` must be NULL or a pointer produced by this library that
 * has not been freed before.
 */
void nilcoh_algebra_free(struct NilcohAlgebra *algebra);

/**
 * Dimension of the algebra.
 *
 * # Safety
 * `algebra` must be a live handle and `out` a valid pointer.
 */
enum NilcohStatus nilcoh_algebra_dim(const struct NilcohAlgebra *algebra, size_t *out);

/**
 * Check the Jacobi identity; `InvalidAlgebra` on violation.
 *
 * # Safety
 * `algebra` must be a live handle.
 */
enum NilcohStatus nilcoh_algebra_validate(const struct NilcohAlgebra *algebra);

/**
 * Render the algebra in the canonical JSON file format.
 *
 * # Safety
 * `algebra` must be a live handle and `out` a valid pointer. On `Ok`,
 * `*out` owns a string to release with `nilcoh_string_free`.
 */
enum NilcohStatus nilcoh_algebra_to_json(const struct NilcohAlgebra *algebra, char **out);

/**
 * Validate and build the cohomology ring.
 *
 * # Safety
 * `algebra` must be a live handle and `out` a valid pointer. On `Ok`,
 * `*out` owns a handle to release with `nilcoh_ring_free`.
 */
enum NilcohStatus nilcoh_ring_new(const struct NilcohAlgebra *algebra, struct NilcohRing **out);

/**
 * Release a ring handle. NULL is accepted and ignored.
 *
 * # Safety
 * `ring` must be NULL or a pointer produced by this library that has
 * not been freed before.
 */
void nilcoh_ring_free(struct NilcohRing *ring);

/**
 * Betti number in one degree (0 above the top dimension).
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum NilcohStatus nilcoh_ring_betti(const struct NilcohRing *ring, size_t degree, size_t *out);

/**
 * Euler characteristic (always 0 in positive dimensions, kept as a
 * consistency probe).
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum NilcohStatus nilcoh_ring_euler_characteristic(const struct NilcohRing *ring, int64_t *out);

/**
 * Cup-length of the ring.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum NilcohStatus nilcoh_ring_cup_length(const struct NilcohRing *ring, size_t *out);

/**
 * Cohomological symplecticness: writes 1 or 0. `Unsupported` in odd
 * dimensions.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum NilcohStatus nilcoh_ring_is_symplectic(const struct NilcohRing *ring, int32_t *out);

/**
 * Full orbit-bounds report as a JSON document (the same schema the
 * CLI prints). Even dimensions only.
 *
 * # Safety
 * `algebra` must be a live handle and `out` a valid pointer. On `Ok`,
 * `*out` owns a string to release with `nilcoh_string_free`.
 */
enum NilcohStatus nilcoh_report_json(const struct NilcohAlgebra *algebra, char **out);

/**
 * Release a string produced by this library. NULL is accepted.
 *
 * # Safety
 * `text` must be NULL or a string produced by this library that has
 * not been freed before.
 */
void nilcoh_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILCOH_H */
