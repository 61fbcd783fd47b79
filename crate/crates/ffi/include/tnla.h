#ifndef TNLA_H
#define TNLA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Zero is success.
 */
typedef enum TnlaStatus {
  TNLA_STATUS_OK = 0,
  TNLA_STATUS_NULL_POINTER = 1,
  TNLA_STATUS_BUFFER_TOO_SMALL = 2,
  TNLA_STATUS_INVALID_BD = 3,
  TNLA_STATUS_NON_FINITE = 4,
  TNLA_STATUS_OVERFLOW = 5,
  TNLA_STATUS_UNDERFLOW = 6,
  TNLA_STATUS_DIMENSION_MISMATCH = 7,
  TNLA_STATUS_NOT_TOTALLY_NONNEGATIVE = 8,
  TNLA_STATUS_NODES_NOT_SORTED = 9,
  TNLA_STATUS_NEGATIVE_NODE = 10,
  TNLA_STATUS_SINGULAR_PAIR = 11,
  TNLA_STATUS_BAD_RANGE = 12,
  TNLA_STATUS_DUPLICATE_NODES = 13,
  TNLA_STATUS_NO_CONVERGENCE = 14,
  TNLA_STATUS_REDUCTION_FAILURE = 15,
  TNLA_STATUS_NOT_SYMMETRIC = 16,
  TNLA_STATUS_SINGULAR = 17,
  TNLA_STATUS_PRECISION_NOT_REACHED = 18,
  TNLA_STATUS_OTHER = 19,
  TNLA_STATUS_PANIC = 20,
} TnlaStatus;

/**
 * Opaque handle to a bidiagonal decomposition.
 */
typedef struct TnlaBd TnlaBd;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `tnla_*` call on the same thread.
 */
const char *tnla_last_error(void);

/**
 * Builds a grid from `rows * cols` row-major values.
 *
 * # Safety
 * `p` must point to `rows * cols` readable doubles; `out` must be writable.
 */
enum TnlaStatus tnla_bd_new(size_t rows, size_t cols, const double *p, struct TnlaBd **out);

/**
 * # Safety
 * `b` must come from this library and not have been freed; null is a no-op.
 */
void tnla_bd_free(struct TnlaBd *b);

/**
 * # Safety
 * `b` must be a live handle or null.
 */
size_t tnla_bd_rows(const struct TnlaBd *b);

/**
 * # Safety
 * `b` must be a live handle or null.
 */
size_t tnla_bd_cols(const struct TnlaBd *b);

/**
 * Copies the grid, row-major, into `out`.
 *
 * # Safety
 * `b` must be a live handle; `out` must hold `cap` doubles.
 */
enum TnlaStatus tnla_bd_grid(const struct TnlaBd *b, double *out, size_t cap);

/**
 * Vandermonde matrix `x_i^j` on `n` increasing nonnegative nodes.
 *
 * # Safety
 * `x` must hold `n` doubles; `out` must be writable.
 */
enum TnlaStatus tnla_bd_vandermonde(const double *x, size_t n, struct TnlaBd **out);

/**
 * Cauchy matrix `1 / (x_i + y_j)` on increasing nodes.
 *
 * # Safety
 * `x` and `y` must hold `n` doubles each; `out` must be writable.
 */
enum TnlaStatus tnla_bd_cauchy(const double *x, const double *y, size_t n, struct TnlaBd **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum TnlaStatus tnla_bd_hilbert(size_t n, struct TnlaBd **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum TnlaStatus tnla_bd_pascal(size_t n, struct TnlaBd **out);

/**
 * Reproducible random grid; pivots in `[lo, hi]`, multipliers in `[0, hi]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TnlaStatus tnla_bd_random(size_t n, uint64_t seed, double lo, double hi, struct TnlaBd **out);

/**
 * Decomposition of a dense `n x n` matrix by Neville elimination.
 *
 * # Safety
 * `a` must hold `n * n` doubles; `out` must be writable.
 */
enum TnlaStatus tnla_bd_from_matrix(size_t n, const double *a, struct TnlaBd **out);

/**
 * The represented matrix, row-major.
 *
 * # Safety
 * `b` must be a live handle; `out` must hold `cap` doubles.
 */
enum TnlaStatus tnla_expand(const struct TnlaBd *b, double *out, size_t cap);

/**
 * The inverse, row-major.
 *
 * # Safety
 * `b` must be a live handle; `out` must hold `cap` doubles.
 */
enum TnlaStatus tnla_inverse(const struct TnlaBd *b, double *out, size_t cap);

/**
 * Solves `A x = rhs`, or `A^T x = rhs` when `transpose` is nonzero.
 *
 * # Safety
 * `b` must be a live handle; `rhs` and `x` must hold `n` doubles.
 */
enum TnlaStatus tnla_solve(const struct TnlaBd *b,
                           const double *rhs,
                           size_t n,
                           int transpose,
                           double *x);

/**
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum TnlaStatus tnla_determinant(const struct TnlaBd *b, double *out);

/**
 * Singular values in descending order.
 *
 * # Safety
 * `b` must be a live handle; `out` must hold `cap` doubles.
 */
enum TnlaStatus tnla_singular_values(const struct TnlaBd *b, double *out, size_t cap);

/**
 * Eigenvalues of a symmetric grid in descending order.
 *
 * # Safety
 * `b` must be a live handle; `out` must hold `cap` doubles.
 */
enum TnlaStatus tnla_eigenvalues_sym(const struct TnlaBd *b, double *out, size_t cap);

/**
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum TnlaStatus tnla_cond2(const struct TnlaBd *b, double *out);

/**
 * Least-squares solution of a full-column-rank `m x n` problem, `m >= n`.
 *
 * # Safety
 * `b` must be a live handle; `rhs` must hold `m` doubles, `x` `n` doubles.
 */
enum TnlaStatus tnla_lsq_solve(const struct TnlaBd *b,
                               const double *rhs,
                               size_t m,
                               double *x,
                               size_t n);

/**
 * Monomial coefficients of the interpolant through `(x_i, f_i)`.
 *
 * # Safety
 * `x`, `f` and `a` must hold `n` doubles each.
 */
enum TnlaStatus tnla_bp_dual_solve(const double *x, const double *f, size_t n, double *a);

/**
 * Conventional partial-pivoting solve of a dense `n x n` system, for comparison.
 *
 * # Safety
 * `a` must hold `n * n` doubles; `rhs` and `x` `n` doubles each.
 */
enum TnlaStatus tnla_dense_solve(size_t n, const double *a, const double *rhs, double *x);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TNLA_H */
