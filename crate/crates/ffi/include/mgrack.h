#ifndef MGRACK_H
#define MGRACK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MgrackSample {
  /**
   * 18 elements over the Z3 family of S3.
   */
  MGRACK_SAMPLE_ASSOCIATED = 0,
  /**
   * 108 elements over S3 ⋉ S3.
   */
  MGRACK_SAMPLE_SEMIDIRECT = 1,
  /**
   * 9 elements from the shift rack on three points.
   */
  MGRACK_SAMPLE_SHIFT_RACK = 2,
} MgrackSample;

typedef enum MgrackStatus {
  MGRACK_STATUS_OK = 0,
  MGRACK_STATUS_NULL_ARGUMENT = 1,
  MGRACK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or a file of the wrong shape.
   */
  MGRACK_STATUS_FORMAT = 3,
  /**
   * A structure fails its axioms.
   */
  MGRACK_STATUS_INVALID_STRUCTURE = 4,
  /**
   * A diagram fails validation.
   */
  MGRACK_STATUS_INVALID_DIAGRAM = 5,
  /**
   * A move site does not match the move's pattern.
   */
  MGRACK_STATUS_MOVE_MISMATCH = 6,
  MGRACK_STATUS_USAGE = 7,
  /**
   * The result does not fit the output type.
   */
  MGRACK_STATUS_OVERFLOW = 8,
  MGRACK_STATUS_OUT_OF_RANGE = 9,
  MGRACK_STATUS_PANIC = 10,
} MgrackStatus;

/**
 * Opaque validated diagram.
 */
typedef struct MgrackDiagram MgrackDiagram;

/**
 * Opaque multiple group rack.
 */
typedef struct MgrackMgr MgrackMgr;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mgrack_version(void);

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next call on this thread.
 */
const char *mgrack_last_error(void);

/**
 * Parses an MGR file and checks the axioms.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum MgrackStatus mgrack_mgr_from_json(const char *json, struct MgrackMgr **out);

/**
 * # Safety
 * `out` is writable.
 */
enum MgrackStatus mgrack_mgr_sample(enum MgrackSample which, struct MgrackMgr **out);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `m` is null or a live handle.
 */
size_t mgrack_mgr_len(const struct MgrackMgr *m);

/**
 * `u ∗ v` by global element index.
 *
 * # Safety
 * `m` is a live handle; `out` is writable.
 */
enum MgrackStatus mgrack_mgr_star(const struct MgrackMgr *m, size_t u, size_t v, size_t *out);

/**
 * Re-runs the axiom check; `*ok` is false when some axiom fails.
 *
 * # Safety
 * `m` is a live handle; `ok` is writable.
 */
enum MgrackStatus mgrack_mgr_verify(const struct MgrackMgr *m, bool *ok);

/**
 * # Safety
 * `m` is null or a handle not yet freed.
 */
void mgrack_mgr_free(struct MgrackMgr *m);

/**
 * Parses and validates a diagram.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum MgrackStatus mgrack_diagram_from_json(const char *json, struct MgrackDiagram **out);

/**
 * Applies a move given as JSON and returns a new diagram.
 *
 * # Safety
 * `d` is a live handle; `move_json` is a NUL-terminated string; `out` is
 * writable.
 */
enum MgrackStatus mgrack_diagram_apply_move(const struct MgrackDiagram *d,
                                            const char *move_json,
                                            struct MgrackDiagram **out);

/**
 * Number of arcs; 0 for a null handle.
 *
 * # Safety
 * `d` is null or a live handle.
 */
size_t mgrack_diagram_arcs(const struct MgrackDiagram *d);

/**
 * # Safety
 * `d` is null or a handle not yet freed.
 */
void mgrack_diagram_free(struct MgrackDiagram *d);

/**
 * Counts colorings using `jobs` worker threads (0 means 1).
 * Returns `Overflow` when the count exceeds `u64`.
 *
 * # Safety
 * `d` and `m` are live handles; `out` is writable.
 */
enum MgrackStatus mgrack_count_colorings(const struct MgrackDiagram *d,
                                         const struct MgrackMgr *m,
                                         size_t jobs,
                                         uint64_t *out);

/**
 * Whether some coloring gives the marked arc a non-identity color. When
 * it does and `color` is not null, `*color` receives that color.
 *
 * # Safety
 * `d` and `m` are live handles; `holds` is writable; `color` is null or
 * writable.
 */
enum MgrackStatus mgrack_check_property_star(const struct MgrackDiagram *d,
                                             const struct MgrackMgr *m,
                                             bool *holds,
                                             size_t *color);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MGRACK_H */
