#ifndef PRODFRAC_H
#define PRODFRAC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. `PF_STATUS_OK` is zero; the others mirror the library's
 * error codes plus boundary failures.
 */
typedef enum {
  PF_STATUS_OK = 0,
  PF_STATUS_NULL_POINTER = 1,
  PF_STATUS_INVALID_UTF8 = 2,
  PF_STATUS_PARSE_ERROR = 3,
  PF_STATUS_INVALID_ARGUMENT = 4,
  PF_STATUS_ZERO_DIVISOR = 5,
  PF_STATUS_ZERO_DENOMINATOR = 6,
  PF_STATUS_ZERO_ITERATE = 7,
  PF_STATUS_RESOURCE_LIMIT = 8,
  PF_STATUS_CONSTANT_INPUT = 9,
  PF_STATUS_CLASS_MISMATCH = 10,
  PF_STATUS_NON_INTEGRAL = 11,
  PF_STATUS_NON_SPECIALIZABLE = 12,
  PF_STATUS_ORBIT_VIOLATION = 13,
  PF_STATUS_PRECONDITION = 14,
  PF_STATUS_INTERNAL = 15,
  PF_STATUS_PANIC = 16,
} PfStatus;

/**
 * Opaque handle to a symbolic expansion Sₙ of a polynomial.
 */
typedef struct PfExpansion PfExpansion;

/**
 * Opaque polynomial handle.
 */
typedef struct PfPoly PfPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *pf_last_error_message(void);

/**
 * Static name of a status code, e.g. "ORBIT_VIOLATION".
 */
const char *pf_status_name(PfStatus status);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pf_string_free(char *s);

/**
 * Process-wide limit on predicted coefficient storage, in 64-bit words.
 */
void pf_set_max_coeff_words(uint64_t limit);

uint64_t pf_max_coeff_words(void);

/**
 * Parse an expression such as "x^2*(x+1)".
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
PfStatus pf_poly_parse(const char *text, PfPoly **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that was not yet freed.
 */
void pf_poly_free(PfPoly *p);

/**
 * Degree of the polynomial, −1 for zero or a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
int64_t pf_poly_degree(const PfPoly *p);

/**
 * Canonical text, e.g. "x^3 + x^2".
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
PfStatus pf_poly_render(const PfPoly *p, char **out);

/**
 * Value at an integer given in decimal.
 *
 * # Safety
 * `p` must be a live handle, `x` a NUL-terminated string, `out` writable.
 */
PfStatus pf_poly_eval(const PfPoly *p, const char *x, char **out);

/**
 * Chebyshev polynomial T_l, l ≥ 1.
 *
 * # Safety
 * `out` must be writable.
 */
PfStatus pf_chebyshev(uint32_t l, PfPoly **out);

/**
 * JSON array of every family the polynomial belongs to.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
PfStatus pf_classify_json(const PfPoly *p, char **out);

/**
 * Sₙ by the first matching family's construction, or by the Euclidean
 * algorithm when no family applies.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
PfStatus pf_expand(const PfPoly *p, size_t n, PfExpansion **out);

/**
 * # Safety
 * `e` must be null or a handle from this library that was not yet freed.
 */
void pf_expansion_free(PfExpansion *e);

/**
 * Number of partial quotients including the head; 0 for a null handle.
 *
 * # Safety
 * `e` must be null or a live handle.
 */
size_t pf_expansion_len(const PfExpansion *e);

/**
 * 1-based position of the first quotient outside ℤ[x], or 0 if all are
 * integral.
 *
 * # Safety
 * `e` must be a live handle.
 */
size_t pf_expansion_first_non_integral(const PfExpansion *e);

/**
 * Quotient `i` (0 is the head) as text.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
PfStatus pf_expansion_quotient(const PfExpansion *e, size_t i, char **out);

/**
 * Regular continued fraction of the expansion at x = M as a JSON array of
 * decimal strings.
 *
 * # Safety
 * `e` must be a live handle, `at` a NUL-terminated string, `out` writable.
 */
PfStatus pf_expansion_specialize_json(const PfExpansion *e, const char *at, char **out);

/**
 * Exact ∏ⱼ₌₀ⁿ(1 + 1/fⱼ(M)) as reduced numerator and denominator.
 *
 * # Safety
 * `p` must be a live handle, `at` a NUL-terminated string, `num` and `den`
 * writable.
 */
PfStatus pf_product_value(const PfPoly *p, const char *at, size_t n, char **num, char **den);

/**
 * Canonical regular continued fraction of p/q (q > 0) as a JSON array.
 *
 * # Safety
 * `p` and `q` must be NUL-terminated strings; `out` must be writable.
 */
PfStatus pf_rational_to_cf_json(const char *p, const char *q, char **out);

/**
 * Irrationality-exponent evidence as JSON; `epsilon` is "p/q" or a decimal.
 * Numeric evidence only, not a proof.
 *
 * # Safety
 * `p` must be a live handle, `at` and `epsilon` NUL-terminated strings,
 * `out` writable.
 */
PfStatus pf_evidence_json(const PfPoly *p,
                          const char *at,
                          size_t depth,
                          const char *epsilon,
                          char **out);

/**
 * Near-exception comparison as JSON {lhs, rhs, agreeDigits, precision}.
 *
 * # Safety
 * `at` must be a NUL-terminated string; `out` must be writable.
 */
PfStatus pf_near_exception_json(const char *at, size_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRODFRAC_H */
