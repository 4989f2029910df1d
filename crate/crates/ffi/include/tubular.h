#ifndef TUBULAR_H
#define TUBULAR_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  TG_STATUS_NULL_POINTER = 1,
  TG_STATUS_INVALID_UTF8 = 2,
  TG_STATUS_PARSE_ERROR = 3,
  TG_STATUS_INVALID_INPUT = 4,
  TG_STATUS_PANIC = 5,
} TgStatus;

typedef enum TgVerdict {
  TG_VERDICT_NO = 0,
  TG_VERDICT_YES = 1,
  TG_VERDICT_UNKNOWN = 2,
} TgVerdict;

/**
 * Opaque presentation handle.
 */
typedef struct TgPresentation TgPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a presentation in the text format. On success `*out` owns a new
 * handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TgStatus tg_presentation_parse(const char *text, struct TgPresentation **out);

/**
 * Looks up a built-in example by name, e.g. `"gersten"` or `"lyman-psi(2,3)"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TgStatus tg_builtin(const char *name, struct TgPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void tg_presentation_free(struct TgPresentation *p);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_vertex_count(const struct TgPresentation *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_edge_count(const struct TgPresentation *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_decide_cat0(const struct TgPresentation *p, enum TgVerdict *out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_decide_fbc(const struct TgPresentation *p, enum TgVerdict *out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_decide_vspecial(const struct TgPresentation *p, enum TgVerdict *out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_decide_cocompact(const struct TgPresentation *p, enum TgVerdict *out);

/**
 * Runs every decider and writes the reports as a JSON array. Release the
 * string with [`tg_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_analyze_json(const struct TgPresentation *p, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void tg_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *tg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TUBULAR_H */
