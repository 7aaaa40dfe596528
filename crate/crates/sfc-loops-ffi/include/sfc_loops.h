#ifndef SFC_LOOPS_H
#define SFC_LOOPS_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every FFI call.
 */
typedef enum SfcStatus {
  SFC_STATUS_OK = 0,
  SFC_STATUS_NULL_POINTER = 1,
  SFC_STATUS_INVALID_ARGUMENT = 2,
  SFC_STATUS_OUT_OF_RANGE = 3,
  SFC_STATUS_CONTRACT_VIOLATION = 4,
  SFC_STATUS_IO_ERROR = 5,
  SFC_STATUS_VERIFICATION_FAILED = 6,
  SFC_STATUS_PANIC = 7,
} SfcStatus;

/**
 * Curve family selector.
 */
typedef enum SfcCurveFamily {
  SFC_CURVE_FAMILY_HILBERT = 0,
  SFC_CURVE_FAMILY_Z_ORDER = 1,
  SFC_CURVE_FAMILY_PEANO = 2,
} SfcCurveFamily;

/**
 * Opaque curve specification.
 */
typedef struct SfcCurve SfcCurve;

/**
 * Opaque join result.
 */
typedef struct SfcJoin SfcJoin;

/**
 * Opaque k-means model.
 */
typedef struct SfcKmeans SfcKmeans;

/**
 * Opaque point set (row-major copies of the caller's data).
 */
typedef struct SfcPoints SfcPoints;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a curve spec. `order` is the recursion depth (side 2^order, or
 * 3^order for Peano).
 *
 * # Safety
 * `out` must be a valid pointer to an `SfcCurve*` slot.
 */
enum SfcStatus sfc_curve_new(enum SfcCurveFamily family,
                             size_t dimension,
                             uint32_t order,
                             struct SfcCurve **out);

/**
 * Free a curve handle; null is a no-op.
 *
 * # Safety
 * `curve` must be null or a handle from [`sfc_curve_new`], not yet freed.
 */
void sfc_curve_free(struct SfcCurve *curve);

/**
 * Total number of grid cells (side^dimension).
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid `uint64_t` slot.
 */
enum SfcStatus sfc_curve_cells(const struct SfcCurve *curve, uint64_t *out);

/**
 * Decode a curve index into `dimension` coordinates.
 *
 * # Safety
 * `curve` must be a live handle; `coords` must point to at least
 * `coords_len` writable `uint64_t`s.
 */
enum SfcStatus sfc_curve_index_to_point(const struct SfcCurve *curve,
                                        uint64_t index,
                                        uint64_t *coords,
                                        size_t coords_len);

/**
 * Encode `dimension` coordinates into a curve index.
 *
 * # Safety
 * `curve` must be a live handle; `coords` must point to `coords_len`
 * readable `uint64_t`s and `out` to a writable one.
 */
enum SfcStatus sfc_curve_point_to_index(const struct SfcCurve *curve,
                                        const uint64_t *coords,
                                        size_t coords_len,
                                        uint64_t *out);

/**
 * Copy `n` x `dimension` row-major doubles into a new point set.
 *
 * # Safety
 * `values` must point to `n * dimension` readable doubles; `out` must
 * be a valid pointer to an `SfcPoints*` slot.
 */
enum SfcStatus sfc_points_new(const double *values,
                              size_t n,
                              size_t dimension,
                              struct SfcPoints **out);

/**
 * Free a point set; null is a no-op.
 *
 * # Safety
 * `points` must be null or a handle from [`sfc_points_new`], not yet
 * freed.
 */
void sfc_points_free(struct SfcPoints *points);

/**
 * ε-similarity join; pairs are normalized to i < j.
 *
 * # Safety
 * `points` must be a live handle and `out` a valid pointer to an
 * `SfcJoin*` slot.
 */
enum SfcStatus sfc_join_run(const struct SfcPoints *points,
                            double eps,
                            enum SfcCurveFamily family,
                            uint32_t workers,
                            uint32_t block_bits,
                            struct SfcJoin **out);

/**
 * Free a join result; null is a no-op.
 *
 * # Safety
 * `join` must be null or a handle from [`sfc_join_run`], not yet freed.
 */
void sfc_join_free(struct SfcJoin *join);

/**
 * Number of qualifying pairs.
 *
 * # Safety
 * `join` must be null or a live handle (null reads as empty).
 */
uint64_t sfc_join_len(const struct SfcJoin *join);

/**
 * Fetch pair `index` (sorted by (i, j)) and its distance.
 *
 * # Safety
 * `join` must be a live handle; `i`, `j` and `dist` must be valid
 * writable slots.
 */
enum SfcStatus sfc_join_pair(const struct SfcJoin *join,
                             uint64_t index,
                             uint32_t *i,
                             uint32_t *j,
                             double *dist);

/**
 * Lloyd k-means with the seeded distinct-point initialization.
 *
 * # Safety
 * `points` must be a live handle and `out` a valid pointer to an
 * `SfcKmeans*` slot.
 */
enum SfcStatus sfc_kmeans_run(const struct SfcPoints *points,
                              uint32_t k,
                              uint32_t max_iters,
                              double tol,
                              uint64_t seed,
                              enum SfcCurveFamily family,
                              uint32_t workers,
                              struct SfcKmeans **out);

/**
 * Free a k-means model; null is a no-op.
 *
 * # Safety
 * `model` must be null or a handle from [`sfc_kmeans_run`], not yet
 * freed.
 */
void sfc_kmeans_free(struct SfcKmeans *model);

/**
 * Iterations executed (0 for null).
 *
 * # Safety
 * `model` must be null or a live handle.
 */
uint32_t sfc_kmeans_iterations(const struct SfcKmeans *model);

/**
 * Final inertia (NaN for null).
 *
 * # Safety
 * `model` must be null or a live handle.
 */
double sfc_kmeans_inertia(const struct SfcKmeans *model);

/**
 * Copy the k x dimension centroid matrix into `out` (length `out_len`).
 *
 * # Safety
 * `model` must be a live handle; `out` must point to `out_len`
 * writable doubles.
 */
enum SfcStatus sfc_kmeans_centroids(const struct SfcKmeans *model, double *out, size_t out_len);

/**
 * Copy the per-point centroid assignments into `out` (length `out_len`).
 *
 * # Safety
 * `model` must be a live handle; `out` must point to `out_len`
 * writable `uint32_t`s.
 */
enum SfcStatus sfc_kmeans_assignments(const struct SfcKmeans *model, uint32_t *out, size_t out_len);

/**
 * C = A (m x k) times B (k x n), row-major, written to caller-allocated
 * `out_c` of length m*n. Bit-identical for every worker count and family.
 *
 * # Safety
 * `a`, `b` and `out_c` must point to `m*k`, `k*n` and `m*n` doubles
 * respectively (readable for inputs, writable for `out_c`).
 */
enum SfcStatus sfc_matmul_run(const double *a,
                              size_t m,
                              size_t k,
                              const double *b,
                              size_t n,
                              enum SfcCurveFamily family,
                              uint32_t workers,
                              double *out_c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SFC_LOOPS_H */
