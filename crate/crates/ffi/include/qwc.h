#ifndef QWC_H
#define QWC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the `qwc` command's exit codes.
 */
typedef enum QwcStatus {
  QWC_STATUS_OK = 0,
  /**
   * A verification ran and at least one cell failed.
   */
  QWC_STATUS_FAILED = 1,
  QWC_STATUS_INVALID = 2,
  QWC_STATUS_UNSUPPORTED = 3,
  QWC_STATUS_NULL_POINTER = 4,
  QWC_STATUS_UTF8 = 5,
  QWC_STATUS_PANIC = 6,
} QwcStatus;

/**
 * A validated toric GIT presentation.
 */
typedef struct QwcPresentation QwcPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or "". The pointer
 * stays valid until the next call on the same thread.
 */
const char *qwc_last_error(void);

/**
 * Load a built-in presentation by name (`p1`, `p2`, `f2`, `local-p2`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QwcStatus qwc_presentation_from_preset(const char *name, struct QwcPresentation **out);

/**
 * Parse and validate a JSON presentation document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QwcStatus qwc_presentation_from_json(const char *json, struct QwcPresentation **out);

/**
 * # Safety
 * `p` must come from a `qwc_presentation_*` constructor and not be used
 * afterwards. Null is ignored.
 */
void qwc_presentation_free(struct QwcPresentation *p);

/**
 * Fixed points, tangent weights, positivity flags and `chi_top` as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum QwcStatus qwc_analyze(const struct QwcPresentation *p, char **out);

/**
 * Run one identity check (`i-equals-j`, `truncation`, `v-s`, `string`,
 * `dilaton`, `divisor`, `trr`, `i0-lemma`, `point-wallcross`) and return
 * the report as JSON. `p` may be null for `point-wallcross`, which reads
 * `degree` as the largest light-point count and checks up to six heavy
 * points. `epsilon` may be null for the default of 1. Returns `Failed`
 * (with the report still written) when a cell fails.
 *
 * # Safety
 * String arguments must be NUL-terminated or null where allowed; `out`
 * must be a valid pointer.
 */
enum QwcStatus qwc_verify(const struct QwcPresentation *p,
                          const char *identity,
                          int64_t degree,
                          int64_t z_order,
                          const char *epsilon,
                          uint64_t seed,
                          char **out);

/**
 * Run the `qwc` command line with `argc` arguments (excluding the program
 * name). Standard output and error are returned as strings; the return
 * value is the exit code.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `out_stdout` and
 * `out_stderr` must be valid pointers.
 */
int32_t qwc_cli_run(size_t argc, const char *const *argv, char **out_stdout, char **out_stderr);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qwc_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *qwc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QWC_H */
