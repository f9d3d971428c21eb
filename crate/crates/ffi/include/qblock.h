#ifndef QBLOCK_H
#define QBLOCK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QbClass {
  QB_CLASS_FOREST = 0,
  QB_CLASS_OUTERPLANAR = 1,
  QB_CLASS_BLOCK_GRAPH = 2,
  QB_CLASS_UNSUPPORTED = 3,
} QbClass;

typedef enum QbFormat {
  QB_FORMAT_EDGE_LIST = 0,
  QB_FORMAT_GRAPH6 = 1,
} QbFormat;

typedef enum QbRender {
  QB_RENDER_TEXT = 0,
  QB_RENDER_JSON = 1,
  QB_RENDER_LATEX = 2,
} QbRender;

/**
 * Status codes; the non-zero values match the exit codes of the CLI.
 */
typedef enum QbStatus {
  QB_STATUS_OK = 0,
  QB_STATUS_FAILURE = 1,
  QB_STATUS_PARSE = 2,
  QB_STATUS_UNSUPPORTED = 3,
  QB_STATUS_ORBIT_GAP = 4,
  QB_STATUS_SHADOW_MISMATCH = 5,
  QB_STATUS_INVALID_ARGUMENT = 6,
} QbStatus;

/**
 * Opaque graph handle.
 */
typedef struct QbGraph QbGraph;

/**
 * Opaque result handle.
 */
typedef struct QbResult QbResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *qb_last_error(void);

/**
 * Parses `text` (NUL-terminated) into a new graph stored in `*out`.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum QbStatus qb_graph_parse(const char *text, enum QbFormat format, struct QbGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from `qb_graph_parse` not yet freed.
 */
void qb_graph_free(struct QbGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t qb_graph_vertex_count(const struct QbGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum QbStatus qb_classify(const struct QbGraph *g, enum QbClass *out);

/**
 * Computes the quantum automorphism group of `g` into `*out`. With
 * `force`, graphs outside the supported classes are attempted; `jobs`
 * of 0 or 1 runs on the calling thread.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum QbStatus qb_qut(const struct QbGraph *g, bool force, size_t jobs, struct QbResult **out);

/**
 * # Safety
 * `r` must be null or a handle from `qb_qut` not yet freed.
 */
void qb_result_free(struct QbResult *r);

/**
 * Renders the expression; returns null on a null handle.
 *
 * # Safety
 * `r` must be a live result handle.
 */
char *qb_result_render(const struct QbResult *r, enum QbRender fmt);

/**
 * Order of the classical shadow as a decimal string.
 *
 * # Safety
 * `r` must be a live result handle.
 */
char *qb_result_shadow_order(const struct QbResult *r);

/**
 * # Safety
 * `r` must be a live result handle.
 */
bool qb_result_is_classical(const struct QbResult *r);

/**
 * Number of assumptions the result depends on (non-zero only for forced runs).
 *
 * # Safety
 * `r` must be a live result handle.
 */
size_t qb_result_assumption_count(const struct QbResult *r);

/**
 * Compares the classical shadow of `r` with a brute-force automorphism
 * count of `g` (at most 12 vertices). Returns `ShadowMismatch` when they
 * differ.
 *
 * # Safety
 * `r` and `g` must be live handles.
 */
enum QbStatus qb_result_check_aut(const struct QbResult *r, const struct QbGraph *g);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void qb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QBLOCK_H */
