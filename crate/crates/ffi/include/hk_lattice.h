#ifndef HK_LATTICE_H
#define HK_LATTICE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HkStatus {
  HK_STATUS_OK = 0,
  HK_STATUS_NULL_POINTER = 1,
  HK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input: bad JSON, wrong dimensions, unparsable scalars.
   */
  HK_STATUS_INVALID_INPUT = 3,
  /**
   * A mathematical precondition failed or the computation was obstructed.
   */
  HK_STATUS_ENGINE = 4,
  /**
   * The value exists but does not fit the output type.
   */
  HK_STATUS_OVERFLOW = 5,
  HK_STATUS_PANIC = 6,
} HkStatus;

/**
 * Opaque handle to an even integral lattice.
 */
typedef struct HkLattice HkLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next call into the library on the same thread.
 */
const char *hk_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void hk_string_free(char *s);

/**
 * Builds a lattice from a row-major `rank × rank` Gram matrix.
 *
 * # Safety
 * `gram` must point to `rank * rank` readable values and `out` must be writable.
 */
enum HkStatus hk_lattice_new(const int64_t *gram, size_t rank, struct HkLattice **out);

/**
 * # Safety
 * `lattice` must be NULL or a handle from [`hk_lattice_new`] that has not been freed.
 */
void hk_lattice_free(struct HkLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle; `rank` must be writable.
 */
enum HkStatus hk_lattice_rank(const struct HkLattice *lattice, size_t *rank);

/**
 * # Safety
 * `lattice` must be a live handle; `positive` and `negative` must be writable.
 */
enum HkStatus hk_lattice_signature(const struct HkLattice *lattice,
                                   size_t *positive,
                                   size_t *negative);

/**
 * # Safety
 * `lattice` must be a live handle; `det` must be writable.
 */
enum HkStatus hk_lattice_determinant(const struct HkLattice *lattice, int64_t *det);

/**
 * Invariants `(r, a, δ)` of a 2-elementary lattice.
 *
 * # Safety
 * `lattice` must be a live handle; the output pointers must be writable.
 */
enum HkStatus hk_lattice_two_elementary(const struct HkLattice *lattice,
                                        uint32_t *r,
                                        uint32_t *a,
                                        uint8_t *delta);

/**
 * Elementary divisors of the discriminant group as a JSON array of decimal strings.
 *
 * # Safety
 * `lattice` must be a live handle; `out` must be writable. Free the result with [`hk_string_free`].
 */
enum HkStatus hk_lattice_discriminant_json(const struct HkLattice *lattice, char **out);

/**
 * Runs the mirror pipeline on a scenario and returns the report as JSON.
 *
 * # Safety
 * `scenario_json` must be a NUL-terminated string; `out` must be writable.
 * Free the result with [`hk_string_free`].
 */
enum HkStatus hk_mirror_report_json(const char *scenario_json, char **out);

/**
 * Classifies a scenario's involution and returns the report as JSON.
 *
 * # Safety
 * `scenario_json` must be a NUL-terminated string; `out` must be writable.
 * Free the result with [`hk_string_free`].
 */
enum HkStatus hk_involution_report_json(const char *scenario_json, char **out);

/**
 * Moduli dimension `v² + 2` for `v` written as `r;d1,...,dk;s` over a Picard lattice.
 *
 * # Safety
 * `vector` must be a NUL-terminated string, `picard` a live handle, `dim` writable.
 */
enum HkStatus hk_mukai_dimension(const char *vector, const struct HkLattice *picard, int64_t *dim);

/**
 * Whether `v` admits a universal family by the gcd criterion.
 *
 * # Safety
 * `vector` must be a NUL-terminated string, `picard` a live handle, `fine` writable.
 */
enum HkStatus hk_mukai_is_fine(const char *vector, const struct HkLattice *picard, bool *fine);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HK_LATTICE_H */
