#ifndef DOMGAME_H
#define DOMGAME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Two-valued outcome: whether Alice can force domination first.
typedef enum DgOutcome {
  DG_OUTCOME_DRAW = 0,
  DG_OUTCOME_ALICE_WIN = 1,
} DgOutcome;

// Result of every fallible call.
typedef enum DgStatus {
  DG_STATUS_OK = 0,
  // A required pointer argument was null.
  DG_STATUS_NULL_POINTER = 1,
  // Instance text or edge list is malformed.
  DG_STATUS_PARSE = 2,
  // The forest solver was given a graph with a cycle.
  DG_STATUS_NOT_FOREST = 3,
  // The position exceeds the search limit.
  DG_STATUS_GUARD = 4,
  // The position is not a legal game state.
  DG_STATUS_ILLEGAL_STATE = 5,
  DG_STATUS_INVALID_ARGUMENT = 6,
  // A panic was caught at the boundary.
  DG_STATUS_PANIC = 7,
} DgStatus;

// Exact search value from Alice's side.
typedef enum DgValue {
  DG_VALUE_BOB_WIN = -1,
  DG_VALUE_DRAW = 0,
  DG_VALUE_ALICE_WIN = 1,
} DgValue;

// Opaque graph handle.
typedef struct DgGraph DgGraph;

// Opaque parsed instance: graph, optional claims and side to move.
typedef struct DgInstance DgInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a
// successful call. Valid until the next call on the same thread.
const char *dg_last_error(void);

// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
// `edges` (`2 * edge_count` entries).
//
// # Safety
// `edges` must point to `2 * edge_count` readable values (it may be null
// when `edge_count` is 0) and `out` must be writable.
enum DgStatus dg_graph_from_edges(size_t n,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct DgGraph **out);

// # Safety
// `graph` must be null or a handle from [`dg_graph_from_edges`] or
// [`dg_instance_graph`] that has not been freed.
void dg_graph_free(struct DgGraph *graph);

// # Safety
// `graph` must be a live handle.
size_t dg_graph_vertex_count(const struct DgGraph *graph);

// Parses instance text (`p n m`, `e u v`, optional `a`, `b` and `t` lines).
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum DgStatus dg_instance_parse(const char *text, struct DgInstance **out);

// # Safety
// `instance` must be null or a live handle from [`dg_instance_parse`].
void dg_instance_free(struct DgInstance *instance);

// Copies the instance's graph into a new handle.
//
// # Safety
// `instance` must be a live handle and `out` writable.
enum DgStatus dg_instance_graph(const struct DgInstance *instance, struct DgGraph **out);

// Outcome of the fresh game on a forest, Alice first.
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum DgStatus dg_forest_outcome(const struct DgGraph *graph, enum DgOutcome *out);

// Decision trace of the forest procedure as a JSON document, released with
// [`dg_string_free`].
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum DgStatus dg_forest_explain_json(const struct DgGraph *graph, char **out);

// Outcome on the path with `n >= 1` vertices.
//
// # Safety
// `out` must be writable.
enum DgStatus dg_path_outcome(size_t n, enum DgOutcome *out);

// Outcome on the cycle with `n >= 3` vertices.
//
// # Safety
// `out` must be writable.
enum DgStatus dg_cycle_outcome(size_t n, enum DgOutcome *out);

// Outcome of an instance by the cheapest exact method: closed forms and the
// forest procedure for fresh positions with Alice first, search otherwise.
//
// # Safety
// `instance` must be a live handle and `out` writable.
enum DgStatus dg_instance_solve(const struct DgInstance *instance,
                                size_t max_unclaimed,
                                enum DgOutcome *out);

// Exact value of the instance's position by exhaustive search. Fails with
// [`DgStatus::Guard`] when more than `max_unclaimed` vertices are free.
//
// # Safety
// `instance` must be a live handle and `out` writable.
enum DgStatus dg_instance_oracle(const struct DgInstance *instance,
                                 size_t max_unclaimed,
                                 enum DgValue *out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void dg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOMGAME_H */
