#ifndef ISOMIN_H
#define ISOMIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the exit codes of the command line.
 */
typedef enum IsominStatus {
  ISOMIN_STATUS_OK = 0,
  /**
   * A certificate or numerical check failed; the handle is still filled.
   */
  ISOMIN_STATUS_FAILED = 1,
  /**
   * Bad configuration or arguments.
   */
  ISOMIN_STATUS_CONFIG = 2,
  /**
   * The requested construction cannot exist for these parameters.
   */
  ISOMIN_STATUS_OBSTRUCTION = 3,
  ISOMIN_STATUS_NULL_POINTER = 4,
  ISOMIN_STATUS_INVALID_UTF8 = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  ISOMIN_STATUS_PANIC = 6,
} IsominStatus;

/**
 * Outcome of a single certificate.
 */
typedef enum IsominCertificateStatus {
  ISOMIN_CERTIFICATE_STATUS_PROVED_EQUAL = 0,
  ISOMIN_CERTIFICATE_STATUS_COUNTEREXAMPLE = 1,
  ISOMIN_CERTIFICATE_STATUS_INVALID = 2,
  ISOMIN_CERTIFICATE_STATUS_ENGINE_DIVERGENCE = 3,
} IsominCertificateStatus;

/**
 * Opaque result of [`isomin_pair_check`].
 */
typedef struct IsominPairReport IsominPairReport;

/**
 * Opaque result of [`isomin_verify`].
 */
typedef struct IsominVerifyReport IsominVerifyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *isomin_version(void);

/**
 * Message of the last non-`Ok` status on this thread, or an empty string.
 * Valid until the next failing call on the same thread.
 */
const char *isomin_last_error(void);

/**
 * Runs the identity certificates whose names match the glob `filter`
 * (`"*"` for all) with the built-in fixtures. `seed == 0` selects the
 * default seed. Returns `Ok` when every certificate is proved, `Failed`
 * otherwise; in both cases `*out` receives a report.
 *
 * # Safety
 * `filter` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IsominStatus isomin_verify(const char *filter, uint64_t seed, struct IsominVerifyReport **out);

/**
 * Number of certificates in the report (0 for a null handle).
 *
 * # Safety
 * `r` must be null or a live handle from [`isomin_verify`].
 */
size_t isomin_verify_count(const struct IsominVerifyReport *r);

/**
 * Number of proved certificates.
 *
 * # Safety
 * As for [`isomin_verify_count`].
 */
size_t isomin_verify_passed(const struct IsominVerifyReport *r);

/**
 * Name of certificate `i` (sorted by name), or null when out of range.
 *
 * # Safety
 * As for [`isomin_verify_count`].
 */
const char *isomin_verify_name(const struct IsominVerifyReport *r, size_t i);

/**
 * Status of certificate `i`. Returns `Invalid` when out of range.
 *
 * # Safety
 * As for [`isomin_verify_count`].
 */
enum IsominCertificateStatus isomin_verify_status(const struct IsominVerifyReport *r, size_t i);

/**
 * The full report as JSON.
 *
 * # Safety
 * As for [`isomin_verify_count`].
 */
const char *isomin_verify_json(const struct IsominVerifyReport *r);

/**
 * Releases a verification report. Null is ignored.
 *
 * # Safety
 * `r` must be null or a handle from [`isomin_verify`] not yet freed.
 */
void isomin_verify_free(struct IsominVerifyReport *r);

/**
 * Builds and checks a pair of hypersurfaces. `config` holds `key = value`
 * lines in the format of the command line's `--config` files (the
 * `isomin schema` command lists the keys); unset keys keep their defaults.
 * Returns `Ok` or `Failed` with `*out` set, `Obstruction` when the pair
 * cannot exist, `Config` for bad input.
 *
 * # Safety
 * `config` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IsominStatus isomin_pair_check(const char *config, struct IsominPairReport **out);

/**
 * Number of checks in the pair report.
 *
 * # Safety
 * `r` must be null or a live handle from [`isomin_pair_check`].
 */
size_t isomin_pair_check_count(const struct IsominPairReport *r);

/**
 * Name of check `i`, or null when out of range.
 *
 * # Safety
 * As for [`isomin_pair_check_count`].
 */
const char *isomin_pair_check_name(const struct IsominPairReport *r, size_t i);

/**
 * Worst residual of check `i` over the grid, NaN when out of range.
 *
 * # Safety
 * As for [`isomin_pair_check_count`].
 */
double isomin_pair_check_max(const struct IsominPairReport *r, size_t i);

/**
 * Tolerance of check `i`, NaN when out of range.
 *
 * # Safety
 * As for [`isomin_pair_check_count`].
 */
double isomin_pair_check_tol(const struct IsominPairReport *r, size_t i);

/**
 * Whether check `i` is within tolerance (false when out of range).
 *
 * # Safety
 * As for [`isomin_pair_check_count`].
 */
bool isomin_pair_check_pass(const struct IsominPairReport *r, size_t i);

/**
 * Check summary as JSON (samples are not included).
 *
 * # Safety
 * As for [`isomin_pair_check_count`].
 */
const char *isomin_pair_check_json(const struct IsominPairReport *r);

/**
 * Releases a pair report. Null is ignored.
 *
 * # Safety
 * `r` must be null or a handle from [`isomin_pair_check`] not yet freed.
 */
void isomin_pair_check_free(struct IsominPairReport *r);

/**
 * Principal curvatures (ascending) of the shape operator `I^{-1} II`, from
 * row-major 3x3 first and second fundamental forms. `Config` when `first`
 * is not positive definite.
 *
 * # Safety
 * `first` and `second` must point to 9 doubles, `out` to 3.
 */
enum IsominStatus isomin_principal_curvatures(const double *first,
                                              const double *second,
                                              double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOMIN_H */
