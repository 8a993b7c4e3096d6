#ifndef TROPLOG_H
#define TROPLOG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2, 3 and 4 match the command-line exit codes.
 */
typedef enum {
  TROPLOG_STATUS_OK = 0,
  TROPLOG_STATUS_ERROR = 1,
  TROPLOG_STATUS_NON_GENERIC = 2,
  TROPLOG_STATUS_ITERATION_LIMIT = 3,
  TROPLOG_STATUS_UNPLOTTABLE = 4,
  TROPLOG_STATUS_INVALID_INPUT = 5,
  TROPLOG_STATUS_NULL_POINTER = 6,
  TROPLOG_STATUS_OUT_OF_RANGE = 7,
  TROPLOG_STATUS_BOUNDS_EXCEEDED = 8,
  TROPLOG_STATUS_PANIC = 9,
} TroplogStatus;

/**
 * Result of a curve count.
 */
typedef struct TroplogCountReport TroplogCountReport;

/**
 * Rigid data of a degeneration setup.
 */
typedef struct TroplogRigidData TroplogRigidData;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or null if none. Free with
 * `troplog_string_free`.
 */
char *troplog_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void troplog_string_free(char *s);

/**
 * Number of rational plane curves of degree `d` through `3d - 1` general points, as a
 * decimal string.
 *
 * # Safety
 * `out` is valid for writes.
 */
TroplogStatus troplog_kontsevich(uint32_t d, char **out);

/**
 * Counts plane tropical curves of degree `d` and genus `g` through seeded generic points,
 * redrawing up to `max_reseeds` times on a non-generic draw.
 *
 * # Safety
 * `out` is valid for writes.
 */
TroplogStatus troplog_count(uint32_t d,
                            uint32_t g,
                            uint64_t seed,
                            size_t max_reseeds,
                            TroplogCountReport **out);

/**
 * The total count (with multiplicities) as a decimal string.
 *
 * # Safety
 * `report` is a live handle; `out` is valid for writes.
 */
TroplogStatus troplog_count_report_total(const TroplogCountReport *report, char **out);

/**
 * Number of curves found (without multiplicity).
 *
 * # Safety
 * `report` is a live handle; `out` is valid for writes.
 */
TroplogStatus troplog_count_report_len(const TroplogCountReport *report, size_t *out);

/**
 * The report as JSON; with `with_solutions` nonzero every curve is included.
 *
 * # Safety
 * `report` is a live handle; `out` is valid for writes.
 */
TroplogStatus troplog_count_report_to_json(const TroplogCountReport *report,
                                           bool with_solutions,
                                           char **out);

/**
 * # Safety
 * `report` is null or a live handle, which is invalid afterwards.
 */
void troplog_count_report_free(TroplogCountReport *report);

/**
 * Rigid types of a degeneration setup given as JSON. Every datum is checked to glue.
 *
 * # Safety
 * `setup_json` is a NUL-terminated string; `out` is valid for writes.
 */
TroplogStatus troplog_rigid_from_json(const char *setup_json, TroplogRigidData **out);

/**
 * # Safety
 * `data` is a live handle; `out` is valid for writes.
 */
TroplogStatus troplog_rigid_len(const TroplogRigidData *data, size_t *out);

/**
 * Coefficient of datum `index` as an exact rational string such as `"1/2"`.
 *
 * # Safety
 * `data` is a live handle; `out` is valid for writes.
 */
TroplogStatus troplog_rigid_coefficient(const TroplogRigidData *data, size_t index, char **out);

/**
 * Datum `index` as JSON.
 *
 * # Safety
 * `data` is a live handle; `out` is valid for writes.
 */
TroplogStatus troplog_rigid_to_json(const TroplogRigidData *data, size_t index, char **out);

/**
 * # Safety
 * `data` is null or a live handle, which is invalid afterwards.
 */
void troplog_rigid_free(TroplogRigidData *data);

/**
 * Flattens a map of cone complexes given as JSON; returns the flattened map with the
 * iteration count and subdivision flags.
 *
 * # Safety
 * `map_json` is a NUL-terminated string; `out` is valid for writes.
 */
TroplogStatus troplog_flatten_json(const char *map_json, size_t max_iter, char **out);

/**
 * Quotient of a fan (JSON) by the one-parameter subgroup spanned by `direction`.
 *
 * # Safety
 * `fan_json` is a NUL-terminated string; `direction` points to `len` integers; `out` is
 * valid for writes.
 */
TroplogStatus troplog_quotient_fan_json(const char *fan_json,
                                        const int64_t *direction,
                                        size_t len,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TROPLOG_H */
