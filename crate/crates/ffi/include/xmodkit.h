#ifndef XMODKIT_H
#define XMODKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum XmkStatus {
  XMK_STATUS_OK = 0,
  XMK_STATUS_INVALID = 1,
  XMK_STATUS_PARSE = 2,
  XMK_STATUS_BUDGET_EXCEEDED = 3,
  XMK_STATUS_NULL_ARGUMENT = 4,
  XMK_STATUS_PANIC = 5,
} XmkStatus;

/**
 * A parsed and validated document.
 */
typedef struct XmkDocument XmkDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates `json`. On success `*out` owns a new document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum XmkStatus xmk_document_parse(const char *json, struct XmkDocument **out);

/**
 * # Safety
 * `doc` must come from this library and not have been freed; null is a no-op.
 */
void xmk_document_free(struct XmkDocument *doc);

/**
 * Validation status of `json` without keeping the document.
 *
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum XmkStatus xmk_validate(const char *json);

/**
 * The kind name of `doc` as a static string, or null.
 *
 * # Safety
 * `doc` must be null or a live document.
 */
const char *xmk_document_kind(const struct XmkDocument *doc);

/**
 * Canonical JSON text of `doc`, freed with [`xmk_string_free`].
 *
 * # Safety
 * `doc` must be a live document and `out` a valid pointer.
 */
enum XmkStatus xmk_document_to_json(const struct XmkDocument *doc, char **out);

/**
 * Converts to kind `to`. `via` is null or a comma separated list of
 * intermediate kinds. The input document is left untouched.
 *
 * # Safety
 * Pointers must be valid; `via` may be null.
 */
enum XmkStatus xmk_document_convert(const struct XmkDocument *doc,
                                    const char *to,
                                    const char *via,
                                    struct XmkDocument **out);

/**
 * Round-trip check. `*report_json` receives the report whenever the check
 * ran, and the status is `XMK_STATUS_INVALID` if it failed.
 *
 * # Safety
 * `doc` must be a live document and `report_json` a valid pointer.
 */
enum XmkStatus xmk_document_roundtrip(const struct XmkDocument *doc, char **report_json);

/**
 * Runs the verifier named `property` (as on the command line, e.g.
 * `"peiffer"` or `"d-unique"`). A zero `budget_limit` means the default or
 * `XMODKIT_BUDGET`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum XmkStatus xmk_document_check(const struct XmkDocument *doc,
                                  const char *property,
                                  uint64_t budget_limit,
                                  char **report_json);

/**
 * Enumerates instances of `kind` (`"action"`, `"prexmod"` or `"xmod"`)
 * over two category documents; `*out` receives one JSON document per line.
 *
 * # Safety
 * Pointers must be valid.
 */
enum XmkStatus xmk_enumerate_json(const char *kind,
                                  const char *base_json,
                                  const char *fiber_json,
                                  uint64_t budget_limit,
                                  char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void xmk_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *xmk_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XMODKIT_H */
