/* Generated by cbindgen. Do not edit. */

#ifndef GMM_H
#define GMM_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum GmmStatus {
  GMM_STATUS_OK = 0,
  GMM_STATUS_NULL_POINTER = 1,
  GMM_STATUS_INVALID_ARGUMENT = 2,
  GMM_STATUS_PARSE = 3,
  GMM_STATUS_EMPTY_GRAPH = 4,
  GMM_STATUS_DISCONNECTED = 5,
  GMM_STATUS_IO = 6,
  GMM_STATUS_CONFIG = 7,
  GMM_STATUS_BUFFER_TOO_SMALL = 8,
  GMM_STATUS_PANIC = 9,
} GmmStatus;

/**
 * Opaque graph handle.
 */
typedef struct GmmGraph GmmGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Owned by the
 * library.
 */
const char *gmm_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *gmm_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gmm_string_free(char *s);

/**
 * New empty graph. Never null.
 */
struct GmmGraph *gmm_graph_new(void);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void gmm_graph_free(struct GmmGraph *g);

/**
 * Copies a graph into a new handle.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GmmStatus gmm_graph_clone(const struct GmmGraph *g, struct GmmGraph **out);

/**
 * # Safety
 * `g` must be a live handle.
 */
enum GmmStatus gmm_graph_add_node(struct GmmGraph *g, uint32_t v);

/**
 * Adds an undirected edge. An existing edge is left as is and `added`, when
 * non-null, receives 0.
 *
 * # Safety
 * `g` must be a live handle; `added` null or writable.
 */
enum GmmStatus gmm_graph_add_edge(struct GmmGraph *g, uint32_t u, uint32_t v, bool *added);

/**
 * # Safety
 * `g` must be a live handle.
 */
bool gmm_graph_has_edge(const struct GmmGraph *g, uint32_t u, uint32_t v);

/**
 * Node count, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gmm_graph_node_count(const struct GmmGraph *g);

/**
 * Edge count, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gmm_graph_edge_count(const struct GmmGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t gmm_graph_degree(const struct GmmGraph *g, uint32_t v);

/**
 * # Safety
 * `g` must be a live handle.
 */
bool gmm_graph_is_connected(const struct GmmGraph *g);

/**
 * Parses edge-list text ("u v" per line, `#` comments, lone IDs for
 * isolated nodes).
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum GmmStatus gmm_graph_parse(const char *text, struct GmmGraph **out);

/**
 * Edge-list text of `g`. Free the result with `gmm_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GmmStatus gmm_graph_serialize(const struct GmmGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GmmStatus gmm_graph_mean_clustering(const struct GmmGraph *g, double *out);

/**
 * Mean shortest-path length over all node pairs. Fails on disconnected
 * graphs.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GmmStatus gmm_graph_path_length(const struct GmmGraph *g, double *out);

/**
 * Builds a graph from a JSON spec such as `{"kind":"er","n":50,"p":0.5}`.
 *
 * # Safety
 * `spec_json` must be a nul-terminated string; `out` must be writable.
 */
enum GmmStatus gmm_generate(const char *spec_json, uint64_t seed, struct GmmGraph **out);

/**
 * Number of motifs in the catalog for `tau`.
 *
 * # Safety
 * `out` must be writable.
 */
enum GmmStatus gmm_motif_count(size_t tau, size_t *out);

/**
 * Writes induced occurrence counts, in catalog order, into `counts`.
 *
 * `needed` always receives the catalog length. When `capacity` is smaller
 * nothing is written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `g` must be a live handle; `counts` must hold `capacity` elements;
 * `needed` must be writable.
 */
enum GmmStatus gmm_census(const struct GmmGraph *g,
                          size_t tau,
                          uint64_t *counts,
                          size_t capacity,
                          size_t *needed);

/**
 * Runs a simulation from a JSON config. `trace_json` may be null; otherwise
 * it receives the trace, to be freed with `gmm_string_free`.
 *
 * # Safety
 * `config_json` must be a nul-terminated string; `out` must be writable;
 * `trace_json` null or writable.
 */
enum GmmStatus gmm_simulate(const char *config_json, struct GmmGraph **out, char **trace_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GMM_H */
