#ifndef DYNAMO_H
#define DYNAMO_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  DM_STATUS_OK = 0,
  DM_STATUS_NULL_ARGUMENT = 1,
  DM_STATUS_INVALID_UTF8 = 2,
  DM_STATUS_PARSE = 3,
  DM_STATUS_STRUCTURE = 4,
  DM_STATUS_MODEL = 5,
  DM_STATUS_NODE_OUT_OF_RANGE = 6,
  DM_STATUS_PRECONDITION = 7,
  DM_STATUS_CAP_EXCEEDED = 8,
  DM_STATUS_BUFFER_TOO_SMALL = 9,
  DM_STATUS_INTERNAL = 10,
} DmStatus;

typedef enum {
  DM_MODEL_KIND_R = 0,
  DM_MODEL_KIND_TWO_WAY_R = 1,
  DM_MODEL_KIND_ALPHA = 2,
  DM_MODEL_KIND_TWO_WAY_ALPHA = 3,
} DmModelKind;

typedef enum {
  DM_PROPERTY_DYNAMO = 0,
  DM_PROPERTY_MONOTONE = 1,
  DM_PROPERTY_STABLE = 2,
  DM_PROPERTY_IMMORTAL = 3,
} DmProperty;

typedef enum {
  DM_VERDICT_FAILS = 0,
  DM_VERDICT_HOLDS = 1,
  /**
   * The run overran the round budget.
   */
  DM_VERDICT_INDETERMINATE = 2,
} DmVerdict;

/**
 * Tri-state flag for optional graph facts.
 */
typedef enum {
  DM_FLAG_UNKNOWN = -1,
  DM_FLAG_NO = 0,
  DM_FLAG_YES = 1,
} DmFlag;

/**
 * Opaque graph handle.
 */
typedef struct DmGraph DmGraph;

/**
 * A threshold model. `r` is read by the r kinds, `alpha_num / alpha_den` by
 * the alpha kinds.
 */
typedef struct {
  DmModelKind kind;
  size_t r;
  uint64_t alpha_num;
  uint64_t alpha_den;
} DmModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *dm_last_error(void);

/**
 * Library version as a static string.
 */
const char *dm_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void dm_string_free(char *s);

/**
 * Parses the edge-list format: a header `n m`, then `m` lines `u v`.
 *
 * # Safety
 * `edge_list` must be a nul-terminated string; `out` must be writable.
 */
DmStatus dm_graph_parse(const char *edge_list, DmGraph **out);

/**
 * Builds a graph from `m` edges stored as `2m` node ids.
 *
 * # Safety
 * `edges` must point to `2 * m` values; `out` must be writable.
 */
DmStatus dm_graph_new(size_t n, const size_t *edges, size_t m, DmGraph **out);

/**
 * Builds a member of a named family, e.g. `"cycle"` with params `{8}`.
 *
 * # Safety
 * `family` must be a nul-terminated string, `params` must point to `len`
 * values, `out` must be writable.
 */
DmStatus dm_graph_generate(const char *family, const size_t *params, size_t len, DmGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void dm_graph_free(DmGraph *g);

/**
 * Node count, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t dm_graph_n(const DmGraph *g);

/**
 * Edge count, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t dm_graph_m(const DmGraph *g);

/**
 * The graph in edge-list format, to be freed with `dm_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
DmStatus dm_graph_to_edge_list(const DmGraph *g, char **out);

/**
 * One synchronous round. `black` and `next` hold one byte per node,
 * nonzero meaning black; they may alias.
 *
 * # Safety
 * `black` and `next` must each hold `dm_graph_n(g)` bytes.
 */
DmStatus dm_step(const DmGraph *g, DmModel model, const uint8_t *black, uint8_t *next);

/**
 * Decides `property` for the set of `len` node ids. A `limit` of 0 uses the
 * default round budget.
 *
 * # Safety
 * `ids` must point to `len` values; `out` must be writable.
 */
DmStatus dm_certify(const DmGraph *g,
                    DmModel model,
                    DmProperty property,
                    const size_t *ids,
                    size_t len,
                    size_t limit,
                    DmVerdict *out);

/**
 * Exact minimum set. Writes its size to `min_size` (0 when none exists) and
 * the lexicographically least witness to `witness`, which must hold at least
 * `dm_graph_n(g)` ids. A `cap` of 0 uses the default node cap.
 *
 * # Safety
 * `witness` must hold `capacity` values; `min_size` must be writable.
 */
DmStatus dm_search_min(const DmGraph *g,
                       DmModel model,
                       DmProperty property,
                       size_t cap,
                       size_t *min_size,
                       size_t *witness,
                       size_t capacity);

/**
 * All closed-form bounds for `n` nodes as a JSON document, to be freed with
 * `dm_string_free`. `delta` is the minimum degree; pass `SIZE_MAX` when
 * unknown.
 *
 * # Safety
 * `out` must be writable.
 */
DmStatus dm_bounds_json(DmModel model,
                        size_t n,
                        size_t delta,
                        DmFlag bipartite,
                        DmFlag tree,
                        char **out);

/**
 * Bounds for a concrete graph, as in `dm_bounds_json`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
DmStatus dm_graph_bounds_json(const DmGraph *g, DmModel model, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYNAMO_H */
