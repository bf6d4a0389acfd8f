/* C interface to the arqlab algebra library. */

#ifndef ARQLAB_H
#define ARQLAB_H

/* This file is generated by cbindgen from arqlab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Success.
#define ARQ_OK 0

// Invalid parameter, parse failure, or unmet precondition.
#define ARQ_ERR_PARAM 2

// A knitting budget (node count or dimension cap) was exhausted.
#define ARQ_ERR_BUDGET 4

// An internal consistency check failed.
#define ARQ_ERR_INTERNAL 5

// Verdict of a short-cycle scan: no short cycle exists.
#define ARQ_VERDICT_FREE 0

// Verdict of a short-cycle scan: a short cycle was found.
#define ARQ_VERDICT_HAS_SHORT_CYCLE 1

// An opaque finite-dimensional algebra handle.
typedef struct ArqAlgebra ArqAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on the calling thread, or an empty
// string when no failure has been recorded. Owned by the library: valid
// until the next failing call on this thread, and must not be freed.
const char *arq_last_error(void);

// Frees a string previously returned by this library. A null pointer is
// ignored.
//
// # Safety
//
// `s` must be null or a pointer obtained from an `arq_` function that
// documents `arq_string_free` as its deallocator, passed at most once.
void arq_string_free(char *s);

// Frees an algebra handle. A null pointer is ignored.
//
// # Safety
//
// `a` must be null or a pointer obtained from an `arq_algebra_*`
// constructor, passed at most once.
void arq_algebra_free(struct ArqAlgebra *a);

// Parses an algebra from its textual description (the `arqlab v1` format
// produced by `arq_algebra_render` and the CLI). Returns `NULL` on failure.
//
// # Safety
//
// `text` must be a valid NUL-terminated string.
struct ArqAlgebra *arq_algebra_parse(const char *text);

// Builds the selfinjective Nakayama algebra with `m` vertices and Loewy
// length `ell` over the rationals. Returns `NULL` on failure.
struct ArqAlgebra *arq_algebra_nakayama(size_t m, size_t ell);

// Builds the `r`-fold trivial extension of the algebra `b`. Returns `NULL`
// on failure.
//
// # Safety
//
// `b` must be a valid algebra handle.
struct ArqAlgebra *arq_algebra_trivial_extension(const struct ArqAlgebra *b, size_t r);

// Renders an algebra in the `arqlab v1` text format. Returns `NULL` on
// failure; free the result with `arq_string_free`.
//
// # Safety
//
// `a` must be a valid algebra handle.
char *arq_algebra_render(const struct ArqAlgebra *a);

// Total dimension of the algebra over its scalar field, or `-1` for a null
// handle.
//
// # Safety
//
// `a` must be null or a valid algebra handle.
int64_t arq_algebra_dim(const struct ArqAlgebra *a);

// Number of vertices of the underlying quiver, or `-1` for a null handle.
//
// # Safety
//
// `a` must be null or a valid algebra handle.
int64_t arq_algebra_vertices(const struct ArqAlgebra *a);

// Whether the algebra is selfinjective: `1` yes, `0` no, `-1` for a null
// handle.
//
// # Safety
//
// `a` must be null or a valid algebra handle.
int arq_algebra_is_selfinjective(const struct ArqAlgebra *a);

// Scans the Auslander-Reiten quiver for short cycles. On success writes
// `ARQ_VERDICT_FREE` or `ARQ_VERDICT_HAS_SHORT_CYCLE` to `verdict_out` and
// returns `ARQ_OK`; otherwise returns an error status.
//
// # Safety
//
// `a` must be a valid algebra handle and `verdict_out` a valid pointer.
int arq_short_cycles(const struct ArqAlgebra *a,
                     size_t max_nodes,
                     size_t max_dim,
                     int *verdict_out);

// Runs the full freeness check on a selfinjective algebra and returns the
// certificate as a JSON document (the same schema the CLI prints for
// `theorem-check`). Returns `NULL` on failure; free the result with
// `arq_string_free`. Note that a short cycle is a verdict inside the
// certificate, not a failure.
//
// # Safety
//
// `a` must be a valid algebra handle.
char *arq_theorem_check_json(const struct ArqAlgebra *a, size_t max_nodes, size_t max_dim);

// Renders the Auslander-Reiten quiver in Graphviz dot format. Returns
// `NULL` on failure; free the result with `arq_string_free`.
//
// # Safety
//
// `a` must be a valid algebra handle.
char *arq_ar_quiver_dot(const struct ArqAlgebra *a, size_t max_nodes, size_t max_dim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARQLAB_H */
