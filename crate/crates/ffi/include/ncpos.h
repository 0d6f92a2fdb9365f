#ifndef NCPOS_H
#define NCPOS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NcposPreset {
  NCPOS_PRESET_WEYL = 0,
  NCPOS_PRESET_AXB = 1,
  NCPOS_PRESET_COMM = 2,
} NcposPreset;

typedef enum NcposStatus {
  NCPOS_STATUS_OK = 0,
  NCPOS_STATUS_NULL_POINTER = 1,
  NCPOS_STATUS_INVALID_UTF8 = 2,
  NCPOS_STATUS_PARSE = 3,
  NCPOS_STATUS_INVALID_PARAMETERS = 4,
  NCPOS_STATUS_PRESET_MISMATCH = 5,
  NCPOS_STATUS_NOT_HERMITIAN = 6,
  // the computation finished without a decision
  NCPOS_STATUS_INCONCLUSIVE = 7,
  NCPOS_STATUS_FAILED = 8,
  NCPOS_STATUS_PANIC = 9,
} NcposStatus;

// Opaque element handle; remembers the presentation it was built in.
typedef struct NcposElement NcposElement;

// Opaque presentation handle.
typedef struct NcposPresentation NcposPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the next call.
const char *ncpos_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void ncpos_string_free(char *s);

// Creates a presentation. `alpha` and `beta` are rationals such as `"-3/2"`; null selects the preset default.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum NcposStatus ncpos_presentation_new(enum NcposPreset preset,
                                        const char *alpha,
                                        const char *beta,
                                        struct NcposPresentation **out);

// # Safety
// `p` must be null or a live handle from [`ncpos_presentation_new`].
void ncpos_presentation_free(struct NcposPresentation *p);

// Parses a polynomial expression such as `"p^2 + q^2 + 1"`.
//
// # Safety
// `pres` must be a live handle, `expr` NUL-terminated and `out` writable.
enum NcposStatus ncpos_element_parse(const struct NcposPresentation *pres,
                                     const char *expr,
                                     struct NcposElement **out);

// # Safety
// `e` must be null or a live element handle.
void ncpos_element_free(struct NcposElement *e);

// # Safety
// `a`, `b` must be live element handles and `out` writable.
enum NcposStatus ncpos_element_add(const struct NcposElement *a,
                                   const struct NcposElement *b,
                                   struct NcposElement **out);

// # Safety
// `a`, `b` must be live element handles and `out` writable.
enum NcposStatus ncpos_element_mul(const struct NcposElement *a,
                                   const struct NcposElement *b,
                                   struct NcposElement **out);

// Involution `e ↦ e*`.
//
// # Safety
// `e` must be a live element handle and `out` writable.
enum NcposStatus ncpos_element_star(const struct NcposElement *e, struct NcposElement **out);

// # Safety
// `a`, `b` must be live element handles and `out` writable.
enum NcposStatus ncpos_element_equal(const struct NcposElement *a,
                                     const struct NcposElement *b,
                                     bool *out);

// # Safety
// `e` must be a live element handle and `out` writable.
enum NcposStatus ncpos_element_is_hermitian(const struct NcposElement *e, bool *out);

// Multidegree `(d1, d2)`; the zero element has none.
//
// # Safety
// `e` must be a live element handle; `d1`, `d2` writable.
enum NcposStatus ncpos_element_multidegree(const struct NcposElement *e, int64_t *d1, int64_t *d2);

// Canonical normal-form text; free with [`ncpos_string_free`].
//
// # Safety
// `e` must be a live element handle and `out` writable.
enum NcposStatus ncpos_element_to_string(const struct NcposElement *e, char **out);

// Membership of a fraction such as `"p*inv(s1*s2)"` in the bounded subalgebra.
//
// Sets `out` and returns `Ok` when a witness is found, `Inconclusive` when the degree criterion fails.
//
// # Safety
// `pres` must be a live handle, `expr` NUL-terminated and `out` writable.
enum NcposStatus ncpos_member(const struct NcposPresentation *pres,
                              const char *expr,
                              bool *out);

// Strict sum-of-hermitian-squares search over denominators of length at most `max_denom_len`.
//
// Writes the JSON report to `json` in both outcomes; returns `Ok` if a certificate
// was found and `Inconclusive` otherwise.
//
// # Safety
// `e` must be a live element handle and `json` writable.
enum NcposStatus ncpos_sohs_search(const struct NcposElement *e, size_t max_denom_len, char **json);

// Exact strict positivity on ℝ of `Σ coeffs[k] x^k`.
//
// # Safety
// `coeffs` must point to `len` readable values and `out` be writable.
enum NcposStatus ncpos_sturm_positive(const int64_t *coeffs, size_t len, bool *out);

// Library version, static.
const char *ncpos_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCPOS_H */
