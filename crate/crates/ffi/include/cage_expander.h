#ifndef CAGE_EXPANDER_H
#define CAGE_EXPANDER_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The non-zero values match the command-line exit codes.
 */
typedef enum CeStatus {
  CE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CE_STATUS_NULL_POINTER = 1,
  /**
   * Malformed input, unreadable file or invalid graph.
   */
  CE_STATUS_PARSE = 2,
  /**
   * Invalid argument, unmet hypothesis or disconnected graph.
   */
  CE_STATUS_HYPOTHESIS = 3,
  /**
   * Graph too large for exhaustive enumeration.
   */
  CE_STATUS_CAP_EXCEEDED = 4,
  /**
   * Internal failure, including a caught panic or a result that does not
   * fit the output type.
   */
  CE_STATUS_INTERNAL = 5,
} CeStatus;

/**
 * Opaque graph handle.
 */
typedef struct CeGraph CeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null after a
 * successful call. Valid until the next library call on the same thread.
 */
const char *ce_last_error_message(void);

/**
 * Decodes a graph6 string (optional `>>graph6<<` header, trailing newline
 * allowed).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CeStatus ce_graph_from_graph6(const char *text, struct CeGraph **out);

/**
 * Builds a graph on `n` vertices from `m` edges stored as `2 m` vertex
 * indices `u0 v0 u1 v1 ...`.
 *
 * # Safety
 * `edges` must point to `2 m` readable values (it may be null when `m` is
 * 0) and `out` must be writable.
 */
enum CeStatus ce_graph_from_edges(size_t n, const size_t *edges, size_t m, struct CeGraph **out);

/**
 * Builds a catalog graph by name, e.g. `"petersen"` or `"K3,3"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CeStatus ce_graph_from_catalog(const char *name, struct CeGraph **out);

/**
 * Reads a graph6 or adjacency-list file, detecting the format.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CeStatus ce_graph_load(const char *path, struct CeGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from one of the constructors and not be freed twice.
 */
void ce_graph_free(struct CeGraph *g);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ce_graph_order(const struct CeGraph *g);

/**
 * Number of edges; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ce_graph_edge_count(const struct CeGraph *g);

/**
 * Length of a shortest cycle, or 0 for an acyclic graph.
 *
 * # Safety
 * `g` must be a live handle and `girth` writable.
 */
enum CeStatus ce_graph_girth(const struct CeGraph *g, size_t *girth);

/**
 * Moore bound for degree `k` and girth `g`.
 *
 * # Safety
 * `bound` must be writable.
 */
enum CeStatus ce_moore_bound(uint64_t k, uint64_t g, uint64_t *bound);

/**
 * Exact edge expansion `h = num / den` by exhaustive enumeration. Fails with
 * `CapExceeded` when the order exceeds `cap`.
 *
 * # Safety
 * `g` must be a live handle; `num` and `den` must be writable.
 */
enum CeStatus ce_graph_cheeger_exact(const struct CeGraph *g,
                                     size_t cap,
                                     uint64_t *num,
                                     uint64_t *den);

/**
 * Second adjacency eigenvalue `lambda_1` and the largest non-trivial
 * absolute eigenvalue `lambda = max(|lambda_1|, |lambda_min|)`. Either
 * out-pointer may be null.
 *
 * # Safety
 * `g` must be a live handle; non-null out-pointers must be writable.
 */
enum CeStatus ce_graph_second_eigenvalue(const struct CeGraph *g, double *lambda_1, double *lambda);

/**
 * graph6 encoding without header or newline.
 *
 * # Safety
 * `g` must be a live handle and `out` writable. Free the string with
 * `ce_string_free`.
 */
enum CeStatus ce_graph_to_graph6(const struct CeGraph *g, char **out);

/**
 * Full expansion report as JSON with default settings and the given seed.
 *
 * # Safety
 * `g` must be a live handle and `out` writable. Free the string with
 * `ce_string_free`.
 */
enum CeStatus ce_graph_analyze_json(const struct CeGraph *g, uint64_t seed, char **out);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ce_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CAGE_EXPANDER_H */
