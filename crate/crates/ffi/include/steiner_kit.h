#ifndef STEINER_KIT_H
#define STEINER_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_POINTER = 1,
  SK_STATUS_INVALID_UTF8 = 2,
  SK_STATUS_MALFORMED_GRAPH6 = 3,
  SK_STATUS_NOT_A_TREE = 4,
  SK_STATUS_INVALID_GRAPH = 5,
  SK_STATUS_BAD_VERTEX = 6,
  SK_STATUS_EMPTY_SET = 7,
  SK_STATUS_BAD_K = 8,
  SK_STATUS_PRECONDITION = 9,
  SK_STATUS_TOO_LARGE = 10,
  SK_STATUS_BAD_SPEC = 11,
  SK_STATUS_UNSUPPORTED_KIND = 12,
  SK_STATUS_BUFFER_TOO_SMALL = 13,
  SK_STATUS_PANIC = 14,
  SK_STATUS_INTERNAL = 15,
} SkStatus;

/**
 * Opaque handle to a simple connected graph.
 */
typedef struct SkGraph SkGraph;

/**
 * Opaque tree handle.
 */
typedef struct SkTree SkTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *sk_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sk_version(void);

/**
 * Parses one graph6 line that must describe a tree.
 *
 * # Safety
 * `line` must be NUL-terminated; `out` must be writable.
 */
SkStatus sk_tree_from_graph6(const char *line, SkTree **out);

/**
 * Generates a tree family member from a spec such as `starlike:m=3,l=2`.
 *
 * # Safety
 * `spec` must be NUL-terminated; `out` must be writable.
 */
SkStatus sk_tree_from_family(const char *spec, SkTree **out);

/**
 * Releases a tree; NULL is ignored.
 *
 * # Safety
 * `tree` must come from this library and not be used afterwards.
 */
void sk_tree_free(SkTree *tree);

/**
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
SkStatus sk_tree_order(const SkTree *tree, size_t *out);

/**
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
SkStatus sk_tree_diameter(const SkTree *tree, size_t *out);

/**
 * Size of the minimal subtree spanning `set[0..len]`.
 *
 * # Safety
 * `tree` must be a live handle; `set` must hold `len` readable ids; `out` must be writable.
 */
SkStatus sk_tree_steiner_distance(const SkTree *tree, const size_t *set, size_t len, size_t *out);

/**
 * Steiner k-diameter.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
SkStatus sk_tree_sd_k(const SkTree *tree, size_t k, size_t *out);

/**
 * Steiner k-radius.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
SkStatus sk_tree_sr_k(const SkTree *tree, size_t k, size_t *out);

/**
 * Steiner (k,k')-radius.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
SkStatus sk_tree_sr_kk(const SkTree *tree, size_t k, size_t kprime, size_t *out);

/**
 * `|A(T,P)|` for the tree's canonical diametrical path.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
SkStatus sk_tree_a_set_size(const SkTree *tree, size_t *out);

/**
 * Writes the tree's graph6 line (NUL-terminated) into `buf`. `needed`
 * receives the required capacity including the NUL, also on
 * `SK_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `tree` must be a live handle; `buf` must have `cap` writable bytes (may be
 * NULL when `cap` is 0); `needed` must be writable.
 */
SkStatus sk_tree_to_graph6(const SkTree *tree, char *buf, size_t cap, size_t *needed);

/**
 * Parses one graph6 line describing a simple connected graph.
 *
 * # Safety
 * `line` must be NUL-terminated; `out` must be writable.
 */
SkStatus sk_graph_from_graph6(const char *line, SkGraph **out);

/**
 * Releases a graph; NULL is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void sk_graph_free(SkGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
SkStatus sk_graph_order(const SkGraph *graph, size_t *out);

/**
 * Exact Steiner distance of `set[0..len]` in a general graph.
 *
 * # Safety
 * `graph` must be a live handle; `set` must hold `len` readable ids; `out` must be writable.
 */
SkStatus sk_graph_steiner_distance(const SkGraph *graph,
                                   const size_t *set,
                                   size_t len,
                                   size_t *out);

/**
 * Exact right-hand side of a named bound, as a reduced fraction.
 *
 * # Safety
 * `name` must be NUL-terminated; `numer` and `denom` must be writable.
 */
SkStatus sk_bound_value(const char *name,
                        size_t k,
                        size_t kprime,
                        int64_t sr,
                        int64_t *numer,
                        int64_t *denom);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEINER_KIT_H */
