#ifndef ALGCONN_H
#define ALGCONN_H

/* Generated by cbindgen from the algconn-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AlgconnStatus {
  ALGCONN_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ALGCONN_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  ALGCONN_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON, unknown fields, bad Laurent syntax or shape mismatch.
   */
  ALGCONN_STATUS_SCHEMA = 3,
  /**
   * Well-formed input violating a mathematical precondition.
   */
  ALGCONN_STATUS_INVALID = 4,
  /**
   * An output buffer was too small; the required length was written.
   */
  ALGCONN_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * A bug: internal consistency check or panic.
   */
  ALGCONN_STATUS_INTERNAL = 6,
} AlgconnStatus;

/**
 * A map `V → TX` on the projective line.
 */
typedef struct AlgconnAnchor AlgconnAnchor;

/**
 * A vector bundle on the projective line.
 */
typedef struct AlgconnBundle AlgconnBundle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread (empty after a
 * success). The pointer stays valid until the next `algconn_*` call on
 * this thread.
 */
const char *algconn_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *algconn_version(void);

/**
 * Parses `{"rank": r, "transition": [[...]]}` into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum AlgconnStatus algconn_bundle_from_json(const char *json, struct AlgconnBundle **out);

/**
 * Releases a bundle handle; null is ignored.
 *
 * # Safety
 * `bundle` must come from `algconn_bundle_from_json` and not be used again.
 */
void algconn_bundle_free(struct AlgconnBundle *bundle);

/**
 * Rank and degree of a bundle.
 *
 * # Safety
 * `bundle` must be a live handle; `rank` and `degree` writable pointers.
 */
enum AlgconnStatus algconn_bundle_info(const struct AlgconnBundle *bundle,
                                       size_t *rank,
                                       int64_t *degree);

/**
 * Writes the splitting type (non-increasing) into `out[0..rank)`. `len`
 * always receives the rank; if `capacity` is smaller, nothing else is
 * written and `ALGCONN_STATUS_BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `bundle` must be a live handle, `len` writable, and `out` valid for
 * `capacity` writes (it may be null when `capacity` is 0).
 */
enum AlgconnStatus algconn_splitting_type(const struct AlgconnBundle *bundle,
                                          int64_t *out,
                                          size_t capacity,
                                          size_t *len);

/**
 * `h⁰` and `h¹` of a bundle.
 *
 * # Safety
 * `bundle` must be a live handle; `h0` and `h1` writable pointers.
 */
enum AlgconnStatus algconn_cohomology(const struct AlgconnBundle *bundle,
                                      uint64_t *h0,
                                      uint64_t *h1);

/**
 * Parses `{"V": <bundle>, "phi_row": [...]}` into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum AlgconnStatus algconn_anchor_from_json(const char *json, struct AlgconnAnchor **out);

/**
 * Releases an anchor handle; null is ignored.
 *
 * # Safety
 * `anchor` must come from `algconn_anchor_from_json` and not be used again.
 */
void algconn_anchor_free(struct AlgconnAnchor *anchor);

/**
 * Obstruction cocycle and, when it is a coboundary, a verified connection:
 * `{"exists": bool, "cocycle": [[...]], "cert": {"A0", "A1"}?}`.
 *
 * # Safety
 * `bundle` and `anchor` must be live handles and `out` a writable pointer;
 * the string written to `*out` must be freed with `algconn_string_free`.
 */
enum AlgconnStatus algconn_connect_json(const struct AlgconnBundle *bundle,
                                        const struct AlgconnAnchor *anchor,
                                        char **out);

/**
 * Decides existence from slope data: `algebroid` is
 * `{"V": <formal bundle>, "anchor": {"kind": ...}}`, `bundle` is
 * `{"genus": g, "atoms": [...]}`; the decision is written as JSON.
 *
 * # Safety
 * `algebroid` and `bundle` must be NUL-terminated strings and `out` a
 * writable pointer; the string written to `*out` must be freed with
 * `algconn_string_free`.
 */
enum AlgconnStatus algconn_decide_json(const char *algebroid, const char *bundle, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from an `algconn_*` out-parameter and not be used again.
 */
void algconn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALGCONN_H */
