#ifndef SATAKE_H
#define SATAKE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all functions.
 */
typedef enum SatakeStatus {
  SATAKE_STATUS_OK = 0,
  SATAKE_STATUS_NULL_POINTER = 1,
  SATAKE_STATUS_INVALID = 2,
  SATAKE_STATUS_BUDGET = 3,
  /**
   * The caller's buffer is too small; the required length was written.
   */
  SATAKE_STATUS_BUFFER_TOO_SMALL = 4,
  SATAKE_STATUS_INCONSISTENT = 5,
  SATAKE_STATUS_PANIC = 6,
} SatakeStatus;

/**
 * Opaque handle to a root datum and its spherical Hecke algebra.
 */
typedef struct SatakeDatum SatakeDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next call that fails.
 */
const char *satake_last_error(void);

/**
 * Looks up a preset by name ("GL2", "SL3", "Sp4", ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum SatakeStatus satake_datum_new(const char *name, struct SatakeDatum **out_handle);

/**
 * Builds a datum from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum SatakeStatus satake_datum_from_json(const char *json, struct SatakeDatum **out_handle);

/**
 * # Safety
 * `d` must come from a constructor in this library and not be used afterwards. NULL is a no-op.
 */
void satake_datum_free(struct SatakeDatum *d);

/**
 * # Safety
 * `d` must be a live handle and `rank` a valid pointer.
 */
enum SatakeStatus satake_datum_rank(const struct SatakeDatum *d, uintptr_t *rank);

/**
 * # Safety
 * `d` must be a live handle and `order` a valid pointer.
 */
enum SatakeStatus satake_weyl_order(const struct SatakeDatum *d, uintptr_t *order);

/**
 * The datum as a JSON string; release it with [`satake_string_free`].
 *
 * # Safety
 * `d` must be a live handle and `json` a valid pointer.
 */
enum SatakeStatus satake_datum_json(const struct SatakeDatum *d, char **json);

/**
 * Multiplicity of the weight `nu` in the irreducible representation of highest weight `mu`.
 *
 * # Safety
 * `mu` and `nu` must point to `rank` integers; `mult` must be valid.
 */
enum SatakeStatus satake_weight_multiplicity(const struct SatakeDatum *d,
                                             const int64_t *mu,
                                             const int64_t *nu,
                                             int64_t *mult);

/**
 * Point count of S^±_ν ∩ Gr^μ as polynomial coefficients in q, lowest degree first.
 * `sign` is +1 or −1. On `SATAKE_STATUS_BUFFER_TOO_SMALL` the needed length is still written to `len`.
 *
 * # Safety
 * `mu`, `nu` must point to `rank` integers; `buf` to `cap` integers; `len` must be valid.
 */
enum SatakeStatus satake_point_count(const struct SatakeDatum *d,
                                     const int64_t *mu,
                                     const int64_t *nu,
                                     int32_t sign,
                                     int64_t *buf,
                                     uintptr_t cap,
                                     uintptr_t *len);

/**
 * Coefficient of T_ν in T_μ·T_λ, as polynomial coefficients in q, lowest degree first.
 *
 * # Safety
 * `mu`, `lambda`, `nu` must point to `rank` integers; `buf` to `cap` integers; `len` must be valid.
 */
enum SatakeStatus satake_hecke_structure_constant(const struct SatakeDatum *d,
                                                  const int64_t *mu,
                                                  const int64_t *lambda,
                                                  const int64_t *nu,
                                                  int64_t *buf,
                                                  uintptr_t cap,
                                                  uintptr_t *len);

/**
 * Product of two Hecke elements given in the JSON form `{"terms":[{"nu":[..],"N":..}]}`.
 *
 * # Safety
 * `h1`, `h2` must be NUL-terminated strings and `json` a valid pointer.
 */
enum SatakeStatus satake_hecke_multiply(const struct SatakeDatum *d,
                                        const char *h1,
                                        const char *h2,
                                        char **json);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is a no-op.
 */
void satake_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SATAKE_H */
