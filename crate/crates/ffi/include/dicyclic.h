#ifndef DICYCLIC_H
#define DICYCLIC_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum DicStatus {
  DIC_STATUS_OK = 0,
  DIC_STATUS_NULL_POINTER = 1,
  DIC_STATUS_INVALID_UTF8 = 2,
  DIC_STATUS_PARSE = 3,
  DIC_STATUS_INVALID_GROUP = 4,
  DIC_STATUS_INVALID_CONNECTION_SET = 5,
  DIC_STATUS_NOT_GENERATING = 6,
  DIC_STATUS_PRECONDITION = 7,
  DIC_STATUS_INTERNAL = 8,
  DIC_STATUS_PANIC = 9,
} DicStatus;

/**
 * Opaque handle to `Dic(A, y)` with its representation data.
 */
typedef struct DicGroup DicGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a group handle from an abelian group spec (`"Z2xZ6"`) and an
 * element of order 2 (`"(0,3)"`). On success `*out` owns the handle.
 *
 * # Safety
 * `group` and `y` must be NUL-terminated strings; `out` must be writable.
 */
enum DicStatus dic_group_new(const char *group, const char *y, struct DicGroup **out);

/**
 * Releases a handle from [`dic_group_new`]. Null is ignored.
 *
 * # Safety
 * `group` must be null or a live handle not freed before.
 */
void dic_group_free(struct DicGroup *group);

/**
 * `|Dic(A, y)|`, or 0 for a null handle.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
uintptr_t dic_group_order(const struct DicGroup *group);

/**
 * Decides whether `Cay(Dic(A, y), S1 ∪ xS2)` is integral. `*out_agreement`
 * reports whether the criterion matched both spectral oracles.
 *
 * # Safety
 * `group` must be a live handle, `s1`/`s2` NUL-terminated set literals such
 * as `"[1,3]"`, and both out-pointers writable.
 */
enum DicStatus dic_check_integral(const struct DicGroup *group,
                                  const char *s1,
                                  const char *s2,
                                  bool *out_holds,
                                  bool *out_agreement);

/**
 * Decides whether the connected `Cay(Dic(A, y), S1 ∪ xS2)` is distance
 * integral. Fails with `NotGenerating` for disconnected graphs.
 *
 * # Safety
 * As for [`dic_check_integral`].
 */
enum DicStatus dic_check_distance_integral(const struct DicGroup *group,
                                           const char *s1,
                                           const char *s2,
                                           bool *out_holds,
                                           bool *out_agreement);

/**
 * Runs the named check (`"integrality"`, `"distance_integrality"`,
 * `"equivalence"`, …) and returns its JSON record in `*out_json`, to be
 * released with [`dic_string_free`].
 *
 * # Safety
 * As for [`dic_check_integral`]; `check` must be NUL-terminated and
 * `out_json` writable.
 */
enum DicStatus dic_verdict_json(const struct DicGroup *group,
                                const char *check,
                                const char *s1,
                                const char *s2,
                                char **out_json);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not freed before.
 */
void dic_string_free(char *s);

/**
 * The message for the last failed call on this thread, or null. Valid
 * until the next call into this library on the same thread.
 */
const char *dic_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DICYCLIC_H */
