#ifndef DLRB_H
#define DLRB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DlrbStatus {
  DLRB_STATUS_OK = 0,
  DLRB_STATUS_NULL_POINTER = 1,
  DLRB_STATUS_INVALID_UTF8 = 2,
  DLRB_STATUS_INVALID_ARGUMENT = 3,
  DLRB_STATUS_PARSE_ERROR = 4,
  DLRB_STATUS_DEGREE_OVERFLOW = 5,
  DLRB_STATUS_NOT_CERTIFIED = 6,
  DLRB_STATUS_INTERNAL = 7,
} DlrbStatus;

/**
 * Opaque handle to a rule system over `x1 > … > xn` with operator `P`.
 */
typedef struct DlrbSystem DlrbSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a system with `n_generators` generators and weight `lambda`
 * (`"p/q"` or an integer). The handle is released with [`dlrb_system_free`].
 *
 * # Safety
 * `lambda` must be a valid C string and `out` a valid pointer.
 */
enum DlrbStatus dlrb_system_new(uint32_t n_generators, const char *lambda, struct DlrbSystem **out);

/**
 * # Safety
 * `sys` must come from [`dlrb_system_new`] and not be used afterwards.
 */
void dlrb_system_free(struct DlrbSystem *sys);

/**
 * Normal form of `expr`. With `lie != 0` the result is a combination of
 * bracketed basis elements, otherwise an associative polynomial.
 *
 * # Safety
 * `sys` must be a live handle, `expr` a valid C string, `out` a valid pointer.
 */
enum DlrbStatus dlrb_normal_form(const struct DlrbSystem *sys,
                                 const char *expr,
                                 uint32_t max_degree,
                                 int32_t lie,
                                 char **out);

/**
 * The linear basis up to `max_degree` as JSON:
 * `{"lambda": "p/q", "degrees": [{"degree": n, "count": c, "elements": [...]}]}`.
 *
 * # Safety
 * `sys` must be a live handle and `out` a valid pointer.
 */
enum DlrbStatus dlrb_basis_json(const struct DlrbSystem *sys, uint32_t max_degree, char **out);

/**
 * Bounded Gröbner-Shirshov check of the full system (`s1_only == 0`) or of
 * the `g` family alone. Returns [`DlrbStatus::NotCertified`] when some
 * composition does not reduce to zero; the count goes to `failures`.
 *
 * # Safety
 * `sys` must be a live handle; `failures` may be null.
 */
enum DlrbStatus dlrb_check_gsb(const struct DlrbSystem *sys,
                               uint32_t max_degree,
                               int32_t s1_only,
                               int32_t lie,
                               uint64_t *failures);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void dlrb_string_free(char *s);

/**
 * Message of the last failure on this thread; valid until the next call.
 */
const char *dlrb_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DLRB_H */
