/* C interface to the zeq zeta-zero library. */

#ifndef ZEQ_H
#define ZEQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum ZeqStatus {
  ZEQ_STATUS_OK = 0,
  ZEQ_STATUS_NULL_POINTER = 1,
  ZEQ_STATUS_INVALID_ARGUMENT = 2,
  ZEQ_STATUS_DOMAIN_ERROR = 3,
  ZEQ_STATUS_IO_ERROR = 4,
  /**
   * zero count did not close against the Riemann-von Mangoldt estimate
   */
  ZEQ_STATUS_INCOMPLETE = 5,
  ZEQ_STATUS_PARSE_ERROR = 6,
  ZEQ_STATUS_INTERNAL = 7,
} ZeqStatus;

/**
 * Opaque handle to an immutable table of zero ordinates.
 */
typedef struct ZeqZeroTable ZeqZeroTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static C string.
 */
const char *zeq_version(void);

/**
 * Riemann-Siegel theta.
 */
enum ZeqStatus zeq_theta(double t, double *out);

/**
 * Hardy's Z function.
 */
enum ZeqStatus zeq_hardy_z(double t, double *out);

/**
 * Derivative of Hardy's Z function.
 */
enum ZeqStatus zeq_hardy_z_prime(double t, double *out);

/**
 * Standard normal mass of [a, b].
 */
enum ZeqStatus zeq_gaussian_mass(double a, double b, double *out);

/**
 * Mollified sign function F_Omega at x.
 */
enum ZeqStatus zeq_f_omega(double x, double omega, double *out);

/**
 * Locate all zeros on (t_min, t_max].
 */
enum ZeqStatus zeq_table_find(double t_min, double t_max, struct ZeqZeroTable **out);

/**
 * Locate the first n zeros.
 */
enum ZeqStatus zeq_table_first_n(uintptr_t n, struct ZeqZeroTable **out);

/**
 * Import plain-text ordinates (one per line, ascending).
 *
 * # Safety
 * `path` must point at a NUL-terminated string.
 */
enum ZeqStatus zeq_table_import(const char *path, double t_max, struct ZeqZeroTable **out);

/**
 * Load a cache file written by `zeq_table_save` (or the CLI).
 *
 * # Safety
 * `path` must point at a NUL-terminated string.
 */
enum ZeqStatus zeq_table_load(const char *path, struct ZeqZeroTable **out);

/**
 * Write the table to a cache file.
 *
 * # Safety
 * `table` must come from this library and be live; `path` must point at a
 * NUL-terminated string.
 */
enum ZeqStatus zeq_table_save(const struct ZeqZeroTable *table, const char *path);

/**
 * Release a table handle. Null is a no-op.
 *
 * # Safety
 * `table` must be a pointer previously returned by this library and not
 * already freed.
 */
void zeq_table_free(struct ZeqZeroTable *table);

/**
 * Number of ordinates; 0 for a null handle.
 *
 * # Safety
 * `table` must be live or null.
 */
uintptr_t zeq_table_len(const struct ZeqZeroTable *table);

/**
 * Upper height of the table.
 *
 * # Safety
 * `table` must be live or null.
 */
double zeq_table_t_max(const struct ZeqZeroTable *table);

/**
 * 1 when the count closed against the Riemann-von Mangoldt estimate.
 *
 * # Safety
 * `table` must be live or null.
 */
int32_t zeq_table_is_complete(const struct ZeqZeroTable *table);

/**
 * The idx-th (0-based) ordinate.
 *
 * # Safety
 * `table` must be live or null.
 */
enum ZeqStatus zeq_table_gamma(const struct ZeqZeroTable *table, uintptr_t idx, double *out);

/**
 * |Z'(gamma)| carried by the idx-th ordinate.
 *
 * # Safety
 * `table` must be live or null.
 */
enum ZeqStatus zeq_table_z_prime_abs(const struct ZeqZeroTable *table, uintptr_t idx, double *out);

/**
 * Weyl sum over the table: scale_log_t = 0 takes e(ell gamma), 1 takes
 * e(ell gamma log(T)/2pi).
 *
 * # Safety
 * `table` must be live or null.
 */
enum ZeqStatus zeq_weyl_sum(const struct ZeqZeroTable *table,
                            uint32_t ell,
                            int32_t scale_log_t,
                            double *out_re,
                            double *out_im);

/**
 * Exact star discrepancy of `len` points in [0, 1).
 *
 * # Safety
 * `points` must reference `len` readable doubles.
 */
enum ZeqStatus zeq_star_discrepancy(const double *points, uintptr_t len, double *out);

/**
 * Landau-Gonek sum at x with the predicted main term and envelopes.
 * Outputs: observed (re, im), main, e1, e2, e3.
 *
 * # Safety
 * `table` must be live or null; out-pointers must be writable.
 */
enum ZeqStatus zeq_landau_gonek(const struct ZeqZeroTable *table,
                                double x,
                                double *out_re,
                                double *out_im,
                                double *out_main,
                                double *out_e1,
                                double *out_e2,
                                double *out_e3);

/**
 * Band count of the normalized log-derivative statistic:
 * normalization_per_t = 0 normalizes per gamma, 1 per T. Outputs the
 * in-band count, the Gaussian prediction, the KS distance, and how many
 * ordinates were excluded.
 *
 * # Safety
 * `table` must be live or null; out-pointers must be writable.
 */
enum ZeqStatus zeq_count_in_band(const struct ZeqZeroTable *table,
                                 double a,
                                 double b,
                                 int32_t normalization_per_t,
                                 double cutoff,
                                 uintptr_t *out_count,
                                 double *out_prediction,
                                 double *out_ks,
                                 uintptr_t *out_excluded);

/**
 * Fraction of consecutive gaps at or below lambda / log T, with the
 * lambda-normalized ratio.
 *
 * # Safety
 * `table` must be live or null; out-pointers must be writable.
 */
enum ZeqStatus zeq_small_gap_fraction(const struct ZeqZeroTable *table,
                                      double lambda,
                                      double *out_fraction,
                                      double *out_ratio);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZEQ_H */
