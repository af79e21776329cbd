#ifndef MTBOUNDARY_H
#define MTBOUNDARY_H

/* Generated by cbindgen from crates/mtboundary-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MtbStatus {
  MTB_STATUS_OK = 0,
  /**
   * Well-formed input that fails a mathematical requirement.
   */
  MTB_STATUS_CRITERION_FAILED = 1,
  MTB_STATUS_MALFORMED_INPUT = 2,
  MTB_STATUS_NULL_POINTER = 3,
  MTB_STATUS_INVALID_UTF8 = 4,
  MTB_STATUS_PANIC = 5,
} MtbStatus;

/**
 * Parsed analysis input.
 */
typedef struct MtbInput MtbInput;

/**
 * Boundary-component report.
 */
typedef struct MtbReport MtbReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or "" if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mtb_last_error(void);

/**
 * Library version as a static string.
 */
const char *mtb_version(void);

/**
 * Parses an analysis-input JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MtbStatus mtb_input_from_json(const char *json, struct MtbInput **out);

/**
 * The input of a built-in fixture such as "so41_N".
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MtbStatus mtb_input_from_fixture(const char *name, struct MtbInput **out);

/**
 * Serializes an input back to JSON. Free the result with `mtb_string_free`.
 *
 * # Safety
 * `input` must come from this library or be null.
 */
char *mtb_input_to_json(const struct MtbInput *input);

/**
 * # Safety
 * `input` must come from this library and not be used afterwards.
 */
void mtb_input_free(struct MtbInput *input);

/**
 * Runs the full analysis. `sign_b` is +1 or −1 to override the sign of B, or
 * 0 to use the input's. A report is produced even when it records failed
 * criteria; the status is then `CriterionFailed`.
 *
 * # Safety
 * `input` must come from this library and `out` be a valid pointer.
 */
enum MtbStatus mtb_analyze(const struct MtbInput *input,
                           int32_t sign_b,
                           bool skip_orbit_check,
                           struct MtbReport **out);

/**
 * # Safety
 * `report` must come from this library and not be used afterwards.
 */
void mtb_report_free(struct MtbReport *report);

/**
 * The report as JSON; free with `mtb_string_free`. Null if `report` is null.
 *
 * # Safety
 * `report` must come from this library or be null.
 */
char *mtb_report_json(const struct MtbReport *report);

/**
 * The report as text, identical to the CLI's `analyze` output.
 *
 * # Safety
 * `report` must come from this library or be null.
 */
char *mtb_report_text(const struct MtbReport *report);

/**
 * The one-line classification summary.
 *
 * # Safety
 * `report` must come from this library or be null.
 */
char *mtb_report_summary(const struct MtbReport *report);

/**
 * Complex dimension of the boundary component, or −1 for a null report.
 *
 * # Safety
 * `report` must come from this library or be null.
 */
int64_t mtb_report_total_dim(const struct MtbReport *report);

/**
 * 1 if F spans a nilpotent orbit, 0 if not, −1 if unchecked or null.
 *
 * # Safety
 * `report` must come from this library or be null.
 */
int32_t mtb_report_is_nilpotent_orbit(const struct MtbReport *report);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mtb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MTBOUNDARY_H */
