/* C interface to cubecx: finite CAT(0) cube complexes given as pocsets. */

#ifndef CUBECX_H
#define CUBECX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum CubecxStatus {
  CUBECX_STATUS_OK = 0,
  // A required pointer argument was NULL.
  CUBECX_STATUS_NULL_POINTER = 1,
  // A string argument was not UTF-8.
  CUBECX_STATUS_INVALID_UTF8 = 2,
  // A document or generator spec could not be parsed.
  CUBECX_STATUS_PARSE = 3,
  // The input parsed but is not a valid pocset, complex, measure or universe.
  CUBECX_STATUS_INVALID = 4,
  // A vertex, element or parameter is out of range.
  CUBECX_STATUS_OUT_OF_RANGE = 5,
  // A verification found a violation.
  CUBECX_STATUS_VIOLATION = 6,
  // An internal invariant failed; please report with the last error message.
  CUBECX_STATUS_INTERNAL = 7,
} CubecxStatus;

// A finite CAT(0) cube complex.
typedef struct CubecxComplex CubecxComplex;

// A finitely supported integer vector on tightly nested sequences.
typedef struct CubecxVector CubecxVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *cubecx_version(void);

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the thread.
const char *cubecx_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` is NULL or a string returned by this library, not yet freed.
void cubecx_string_free(char *s);

// Builds the complex of a document's `pocset` (or `graph`) section.
//
// # Safety
// `document` is a NUL-terminated string; `out` is writable.
enum CubecxStatus cubecx_complex_from_document(const char *document, struct CubecxComplex **out);

// Builds a standard family from a spec such as `cube:3`, `tripod:2`,
// `grid:2x3`, `closure:3:000,110,011` or `product:path:2*path:1`.
//
// # Safety
// `spec` is a NUL-terminated string; `out` is writable.
enum CubecxStatus cubecx_complex_generate(const char *spec, struct CubecxComplex **out);

// # Safety
// `c` is NULL or a live complex handle; it must not be used afterwards.
void cubecx_complex_free(struct CubecxComplex *c);

// # Safety
// `c` is a live complex handle; `out` is writable.
enum CubecxStatus cubecx_complex_vertex_count(const struct CubecxComplex *c, size_t *out);

// Number of hyperplanes (halfspace pairs).
//
// # Safety
// `c` is a live complex handle; `out` is writable.
enum CubecxStatus cubecx_complex_hyperplane_count(const struct CubecxComplex *c, size_t *out);

// # Safety
// `c` is a live complex handle; `out` is writable.
enum CubecxStatus cubecx_complex_dimension(const struct CubecxComplex *c, size_t *out);

// Combinatorial distance: the number of hyperplanes separating `u` and `v`.
//
// # Safety
// `c` is a live complex handle; `out` is writable.
enum CubecxStatus cubecx_complex_distance(const struct CubecxComplex *c,
                                          size_t u,
                                          size_t v,
                                          size_t *out);

// # Safety
// `c` is a live complex handle; `out` is writable.
enum CubecxStatus cubecx_complex_median(const struct CubecxComplex *c,
                                        size_t u,
                                        size_t v,
                                        size_t w,
                                        size_t *out);

// The median cocycle `c⁽ⁿ⁾(u1, u2, u3)`.
//
// # Safety
// `c` is a live complex handle; `out` is writable.
enum CubecxStatus cubecx_cocycle(const struct CubecxComplex *c,
                                 size_t u1,
                                 size_t u2,
                                 size_t u3,
                                 size_t n,
                                 struct CubecxVector **out);

// # Safety
// `v` is NULL or a live vector handle; it must not be used afterwards.
void cubecx_vector_free(struct CubecxVector *v);

// # Safety
// `v` is a live vector handle; `out` is writable.
enum CubecxStatus cubecx_vector_support_size(const struct CubecxVector *v, size_t *out);

// Exact ℓ¹ norm.
//
// # Safety
// `v` is a live vector handle; `out` is writable.
enum CubecxStatus cubecx_vector_l1(const struct CubecxVector *v, int64_t *out);

// ℓᵖ norm for `p ≥ 1`.
//
// # Safety
// `v` is a live vector handle; `out` is writable.
enum CubecxStatus cubecx_vector_lp(const struct CubecxVector *v, double p, double *out);

// Text form, one `h1,…,hn value` line per nonzero entry; free with [`cubecx_string_free`].
//
// # Safety
// `v` is a live vector handle; `out` is writable.
enum CubecxStatus cubecx_vector_to_text(const struct CubecxVector *v, char **out);

// Transfer character of element `index` of a document's `universe` section.
//
// # Safety
// `document` is a NUL-terminated string; `out` is writable.
enum CubecxStatus cubecx_transfer_character(const char *document, size_t index, int64_t *out);

// Runs the seeded invariant suite and stores the number of failed checks.
// Returns `Violation` when any check fails; the last error then holds the
// first failure's description and witness document.
//
// # Safety
// `failed` is writable.
enum CubecxStatus cubecx_verify(uint64_t seed, size_t complexes, size_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBECX_H */
