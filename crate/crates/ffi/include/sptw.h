/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SPTW_H
#define SPTW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum SptwStatus {
  SPTW_STATUS_OK = 0,
  SPTW_STATUS_NULL_POINTER = 1,
  SPTW_STATUS_INVALID_UTF8 = 2,
  SPTW_STATUS_INVALID_GRAPH = 3,
  SPTW_STATUS_TOO_LARGE = 4,
  SPTW_STATUS_NOT_APPLICABLE = 5,
  SPTW_STATUS_NUMERICAL = 6,
  SPTW_STATUS_CERTIFICATE_FAILED = 7,
  SPTW_STATUS_INVALID_ARGUMENT = 8,
  SPTW_STATUS_PANIC = 9,
} SptwStatus;

// Which bound to read from a report.
typedef enum SptwBound {
  SPTW_BOUND_CS03 = 0,
  SPTW_BOUND_GHNOO24 = 1,
  SPTW_BOUND_THM1 = 2,
  SPTW_BOUND_THM2 = 3,
} SptwBound;

// Opaque bound report handle.
typedef struct SptwBounds SptwBounds;

// Opaque graph handle.
typedef struct SptwGraph SptwGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a graph on `n` vertices from `m` pairs stored flat in `edges`
// (`edges[2k]`, `edges[2k+1]`, 0-indexed). `edges` may be null when `m` is 0.
//
// # Safety
// `edges` must point to `2 * m` readable values and `out` must be writable.
enum SptwStatus sptw_graph_from_edges(size_t n,
                                      const size_t *edges,
                                      size_t m,
                                      struct SptwGraph **out);

// Parses PACE `.gr` text (1-indexed, `p tw n m` header).
//
// # Safety
// `text` must be a NUL-terminated string and `out` must be writable.
enum SptwStatus sptw_graph_from_pace(const char *text, struct SptwGraph **out);

// Parses a 0-indexed edge list, one `u v` pair per line.
//
// # Safety
// `text` must be a NUL-terminated string and `out` must be writable.
enum SptwStatus sptw_graph_from_edge_list(const char *text, struct SptwGraph **out);

// Generates a graph from a descriptor such as `grid:3,4` or `gnp:10,0.3,7`.
//
// # Safety
// `descriptor` must be a NUL-terminated string and `out` must be writable.
enum SptwStatus sptw_graph_from_family(const char *descriptor, struct SptwGraph **out);

// Releases a graph. Null is ignored.
//
// # Safety
// `graph` must come from one of the constructors and not be freed twice.
void sptw_graph_free(struct SptwGraph *graph);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t sptw_graph_order(const struct SptwGraph *graph);

// Edge count, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t sptw_graph_size(const struct SptwGraph *graph);

// Computes the spectrum and all four bounds.
//
// # Safety
// `graph` must be a live handle and `out` must be writable.
enum SptwStatus sptw_bounds_compute(const struct SptwGraph *graph, struct SptwBounds **out);

// Releases a bound report. Null is ignored.
//
// # Safety
// `bounds` must come from [`sptw_bounds_compute`] and not be freed twice.
void sptw_bounds_free(struct SptwBounds *bounds);

// Reads one bound. Returns `NotApplicable` for a graph without edges.
//
// # Safety
// `bounds` must be a live handle and `value` must be writable.
enum SptwStatus sptw_bounds_value(const struct SptwBounds *bounds,
                                  enum SptwBound which,
                                  double *value);

// Second-smallest Laplacian eigenvalue (0 for a single vertex).
//
// # Safety
// `bounds` must be null or a live handle.
double sptw_bounds_lambda2(const struct SptwBounds *bounds);

// Largest Laplacian eigenvalue.
//
// # Safety
// `bounds` must be null or a live handle.
double sptw_bounds_lambda_max(const struct SptwBounds *bounds);

// Largest integer lower bound on the treewidth implied by the report.
//
// # Safety
// `bounds` must be null or a live handle.
uint64_t sptw_bounds_best_integer(const struct SptwBounds *bounds);

// The report as JSON; free with [`sptw_string_free`]. Null on error.
//
// # Safety
// `bounds` must be null or a live handle.
char *sptw_bounds_to_json(const struct SptwBounds *bounds);

// Exact treewidth for graphs with at most `limit` vertices (at most 24).
//
// # Safety
// `graph` must be a live handle and `width` must be writable.
enum SptwStatus sptw_exact_treewidth(const struct SptwGraph *graph, size_t limit, size_t *width);

// Builds and checks the separator certificates. Returns `Ok` when every
// check passes and `CertificateFailed` otherwise. When `json` is not null
// it receives the full certificate (free with [`sptw_string_free`]) in
// both of those cases.
//
// # Safety
// `graph` must be a live handle; `json` must be null or writable.
enum SptwStatus sptw_certify(const struct SptwGraph *graph, size_t limit, char **json);

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library from the same thread.
const char *sptw_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void sptw_string_free(char *s);

// Library version, a static NUL-terminated string.
const char *sptw_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPTW_H */
