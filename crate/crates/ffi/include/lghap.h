#ifndef LGHAP_H
#define LGHAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Construction routes accepted by [`lgh_expand`].
typedef enum LghMethod {
  LGH_METHOD_SERIES = 0,
  LGH_METHOD_BINOMIAL = 1,
  LGH_METHOD_GENERATING_FUNCTION = 2,
  LGH_METHOD_DETERMINANT = 3,
  LGH_METHOD_OPERATOR = 4,
} LghMethod;

// Result codes. Zero is success.
typedef enum LghStatus {
  LGH_STATUS_OK = 0,
  LGH_STATUS_NULL_ARGUMENT = 1,
  LGH_STATUS_INVALID_UTF8 = 2,
  LGH_STATUS_PARSE = 3,
  LGH_STATUS_UNKNOWN_FAMILY = 4,
  LGH_STATUS_INVALID_PARAMETER = 5,
  LGH_STATUS_NORMALIZATION_MISMATCH = 6,
  LGH_STATUS_DEGENERATE_FAMILY = 7,
  LGH_STATUS_UNSUPPORTED = 8,
  LGH_STATUS_INTERNAL = 9,
  LGH_STATUS_PANIC = 10,
} LghStatus;

// Opaque Appell family descriptor.
typedef struct LghFamily LghFamily;

// Opaque exact polynomial in x, y, z.
typedef struct LghPoly LghPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a family spec such as `bernoulli` or `apostol-euler:alpha=2,lambda=1/2`.
//
// # Safety
// `spec` must be a nul-terminated string; `out` must be writable.
enum LghStatus lgh_family_new(const char *spec, struct LghFamily **out);

// # Safety
// `family` must come from [`lgh_family_new`] and not be used afterwards. Null is ignored.
void lgh_family_free(struct LghFamily *family);

// Canonical name of the family, e.g. `apostol-euler:alpha=2,lambda=1/2`.
//
// # Safety
// `family` must be a live handle; `out` must be writable. Free the string with [`lgh_string_free`].
enum LghStatus lgh_family_name(const struct LghFamily *family, char **out);

// Builds the degree-`n` polynomial for indices (m, r).
//
// # Safety
// `family` must be a live handle; `out` must be writable. Free the result with [`lgh_poly_free`].
enum LghStatus lgh_expand(const struct LghFamily *family,
                          uint32_t m,
                          uint32_t r,
                          uint32_t n,
                          enum LghMethod method,
                          struct LghPoly **out);

// # Safety
// `poly` must come from this library and not be used afterwards. Null is ignored.
void lgh_poly_free(struct LghPoly *poly);

// Canonical text form, e.g. `y^4 - 2*y^3 + y^2 + 24*x*y - 12*x - 1/30`.
//
// # Safety
// `poly` must be a live handle; `out` must be writable.
enum LghStatus lgh_poly_to_string(const struct LghPoly *poly, char **out);

// Number of nonzero terms.
//
// # Safety
// `poly` must be a live handle or null (which yields 0).
uintptr_t lgh_poly_term_count(const struct LghPoly *poly);

// Exact value at (x, y, z), each given as `p/q` or an integer; result written as `p/q`.
//
// # Safety
// All string arguments must be nul-terminated; `out` must be writable.
enum LghStatus lgh_poly_eval(const struct LghPoly *poly,
                             const char *x,
                             const char *y,
                             const char *z,
                             char **out);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void lgh_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until the
// next library call on the same thread.
const char *lgh_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LGHAP_H */
