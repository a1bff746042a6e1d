#ifndef HYPERHERM_H
#define HYPERHERM_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HhStatus {
  HH_STATUS_OK = 0,
  HH_STATUS_NULL_POINTER = 1,
  HH_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed parameters or input.
   */
  HH_STATUS_USAGE = 3,
  /**
   * An internal identity failed; the message names it.
   */
  HH_STATUS_INVARIANT = 4,
  HH_STATUS_PANIC = 5,
} HhStatus;

/**
 * Analysis report for one parameter vector or the symbolic family.
 */
typedef struct HhReport HhReport;

/**
 * Result of a verification run.
 */
typedef struct HhVerify HhVerify;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Analyzes the family at `lambda` (`"p1,p2,p3,p4"`), or symbolically when
 * `lambda` is null.
 *
 * # Safety
 * `lambda` is null or a NUL-terminated string; `out` is a valid pointer.
 */
enum HhStatus hh_analyze(const char *lambda, struct HhReport **out);

/**
 * # Safety
 * `report` comes from [`hh_analyze`] and has not been freed.
 */
void hh_report_free(struct HhReport *report);

/**
 * The report as JSON.
 *
 * # Safety
 * `report` is a live handle; `out` is a valid pointer.
 */
enum HhStatus hh_report_json(const struct HhReport *report, char **out);

/**
 * The report as plain text.
 *
 * # Safety
 * `report` is a live handle; `out` is a valid pointer.
 */
enum HhStatus hh_report_text(const struct HhReport *report, char **out);

/**
 * Scalar curvature, as a rational or a polynomial in `l1..l4`.
 *
 * # Safety
 * `report` is a live handle; `out` is a valid pointer.
 */
enum HhStatus hh_report_tau(const struct HhReport *report, char **out);

/**
 * Whether the structure is isotropic hyper-Kaehler.
 *
 * # Safety
 * `report` is a live handle; `out` is a valid pointer.
 */
enum HhStatus hh_report_isotropic_hyper(const struct HhReport *report, bool *out);

/**
 * Runs the verification suites. `skip` is null or a comma-separated list
 * of suite names.
 *
 * # Safety
 * `skip` is null or a NUL-terminated string; `out` is a valid pointer.
 */
enum HhStatus hh_verify(bool strict, const char *skip, struct HhVerify **out);

/**
 * CLI exit status of the run: 0 or 2; -1 for a null handle.
 *
 * # Safety
 * `v` is null or a live handle.
 */
int32_t hh_verify_exit_code(const struct HhVerify *v);

/**
 * Number of FLAG items, expected or not.
 *
 * # Safety
 * `v` is null or a live handle.
 */
size_t hh_verify_flag_count(const struct HhVerify *v);

/**
 * One line per item plus a summary line.
 *
 * # Safety
 * `v` is a live handle; `out` is a valid pointer.
 */
enum HhStatus hh_verify_render(const struct HhVerify *v, char **out);

/**
 * # Safety
 * `v` comes from [`hh_verify`] and has not been freed.
 */
void hh_verify_free(struct HhVerify *v);

/**
 * Decomposes a form on `R^{4n}` given as matrix text (rows on lines,
 * whitespace-separated rationals), or a random form from `seed` when
 * `matrix` is null. Writes the JSON report to `out`.
 *
 * # Safety
 * `matrix` is null or a NUL-terminated string; `out` is a valid pointer.
 */
enum HhStatus hh_decompose(uint32_t n, const char *matrix, uint64_t seed, char **out);

/**
 * Message for the last failing call on this thread; empty after a
 * success. Valid until the next call on the same thread.
 */
const char *hh_last_error(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void hh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERHERM_H */
