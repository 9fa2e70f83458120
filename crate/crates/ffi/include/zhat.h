#ifndef ZHAT_H
#define ZHAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZhatPredicate {
  ZHAT_PREDICATE_IS_ZERO = 0,
  ZHAT_PREDICATE_IN_MAXIMAL = 1,
  ZHAT_PREDICATE_IS_UNIT = 2,
} ZhatPredicate;

/**
 * Classification of an ideal by [`zhat_ideal_classify`].
 */
typedef enum ZhatPrimeKind {
  ZHAT_PRIME_KIND_NOT_PRIME = 0,
  ZHAT_PRIME_KIND_MINIMAL = 1,
  ZHAT_PRIME_KIND_MAXIMAL = 2,
} ZhatPrimeKind;

/**
 * Result codes. `ZHAT_STATUS_OK` is zero; everything else is an error.
 */
typedef enum ZhatStatus {
  ZHAT_STATUS_OK = 0,
  ZHAT_STATUS_NULL_POINTER = 1,
  ZHAT_STATUS_INVALID_ARGUMENT = 2,
  ZHAT_STATUS_INVALID_CONTEXT = 3,
  ZHAT_STATUS_MIXED_CONTEXT = 4,
  ZHAT_STATUS_NOT_A_UNIT = 5,
  ZHAT_STATUS_DIVISION_BY_ZERO = 6,
  ZHAT_STATUS_PRECISION_EXHAUSTED = 7,
  ZHAT_STATUS_NOT_APPROXIMATE_ROOT = 8,
  ZHAT_STATUS_SINGULAR_ROOT = 9,
  ZHAT_STATUS_IMPROPER_IDEAL = 10,
  ZHAT_STATUS_UNKNOWN_PRIME = 11,
  ZHAT_STATUS_BUFFER_TOO_SMALL = 12,
  ZHAT_STATUS_VERIFICATION_FAILED = 13,
  ZHAT_STATUS_INTERNAL = 99,
} ZhatStatus;

/**
 * Opaque ring context `prod_{p in S} Z_p` at precision `N`.
 */
typedef struct ZhatContext ZhatContext;

/**
 * Opaque element of a context.
 */
typedef struct ZhatElement ZhatElement;

/**
 * Opaque finitely generated ideal.
 */
typedef struct ZhatIdeal ZhatIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The last error message on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *zhat_last_error_message(void);

/**
 * # Safety
 * `primes` must point to `len` readable values and `out_context` must be writable.
 */
enum ZhatStatus zhat_context_new(const uint64_t *primes,
                                 size_t len,
                                 uint32_t precision,
                                 struct ZhatContext **out_context);

/**
 * # Safety
 * `context` must come from [`zhat_context_new`] and not be freed twice.
 */
void zhat_context_free(struct ZhatContext *context);

/**
 * One signed integer per prime of the context, in order.
 *
 * # Safety
 * Pointers must be valid; `values` must hold `len` entries.
 */
enum ZhatStatus zhat_element_from_i64(const struct ZhatContext *context,
                                      const int64_t *values,
                                      size_t len,
                                      struct ZhatElement **out_element);

/**
 * # Safety
 * `element` must come from this library and not be freed twice.
 */
void zhat_element_free(struct ZhatElement *element);

/**
 * The element as JSON: `{"context":{"primes":[..],"N":..},"components":[..]}`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZhatStatus zhat_element_to_string(const struct ZhatElement *element, char **out_string);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void zhat_string_free(char *s);

/**
 * # Safety
 * Pointers must be valid.
 */
enum ZhatStatus zhat_element_add(const struct ZhatElement *a,
                                 const struct ZhatElement *b,
                                 struct ZhatElement **out_element);

/**
 * # Safety
 * Pointers must be valid.
 */
enum ZhatStatus zhat_element_mul(const struct ZhatElement *a,
                                 const struct ZhatElement *b,
                                 struct ZhatElement **out_element);

/**
 * # Safety
 * Pointers must be valid.
 */
enum ZhatStatus zhat_element_neg(const struct ZhatElement *a, struct ZhatElement **out_element);

/**
 * # Safety
 * Pointers must be valid.
 */
enum ZhatStatus zhat_element_is_unit(const struct ZhatElement *a, bool *out_unit);

/**
 * Writes the primes where the predicate holds into `buffer`. On
 * `BufferTooSmall`, `len_out` still holds the required length.
 *
 * # Safety
 * `buffer` must hold `capacity` writable entries; other pointers valid.
 */
enum ZhatStatus zhat_truth_set(const struct ZhatElement *a,
                               enum ZhatPredicate predicate,
                               uint64_t *buffer,
                               size_t capacity,
                               size_t *len_out,
                               bool *certain_out);

/**
 * The multiplier `g` with `f*g = 1 - e_X`, and the locus `X`.
 *
 * # Safety
 * `buffer` must hold `capacity` writable entries; other pointers valid.
 */
enum ZhatStatus zhat_division_witness(const struct ZhatElement *a,
                                      struct ZhatElement **out_multiplier,
                                      uint64_t *buffer,
                                      size_t capacity,
                                      size_t *len_out);

/**
 * The ideal generated by `count` elements of `context`.
 *
 * # Safety
 * `generators` must hold `count` valid element pointers.
 */
enum ZhatStatus zhat_ideal_new(const struct ZhatContext *context,
                               const struct ZhatElement *const *generators,
                               size_t count,
                               struct ZhatIdeal **out_ideal);

/**
 * # Safety
 * `ideal` must come from [`zhat_ideal_new`] and not be freed twice.
 */
void zhat_ideal_free(struct ZhatIdeal *ideal);

/**
 * Membership with a certainty flag; uncertain answers depend on digits
 * beyond the precision.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZhatStatus zhat_ideal_contains(const struct ZhatIdeal *ideal,
                                    const struct ZhatElement *element,
                                    bool *member_out,
                                    bool *certain_out);

/**
 * Whether the ideal is a point of Spec R, and which.
 *
 * # Safety
 * Pointers must be valid; `prime_out` is written only for primes.
 */
enum ZhatStatus zhat_ideal_classify(const struct ZhatIdeal *ideal,
                                    enum ZhatPrimeKind *kind_out,
                                    uint64_t *prime_out);

/**
 * Hensel-lifts a simple root of `sum coeffs[i] x^i` from `a0` in `Z_p`
 * at precision `N`; the root is returned as a decimal residue string.
 *
 * # Safety
 * `coeffs` must hold `len` entries; `out_residue` must be writable.
 */
enum ZhatStatus zhat_hensel_lift(uint64_t prime,
                                 uint32_t precision,
                                 const int64_t *coeffs,
                                 size_t len,
                                 int64_t a0,
                                 char **out_residue);

/**
 * Runs one suite (or all when `suite` is null) and returns the text
 * report. A failed verification returns `VerificationFailed` and still
 * writes the report.
 *
 * # Safety
 * `suite` must be null or a valid C string; other pointers valid.
 */
enum ZhatStatus zhat_verify(const struct ZhatContext *context,
                            uint64_t seed,
                            const char *suite,
                            char **out_report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ZHAT_H */
