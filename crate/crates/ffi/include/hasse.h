#ifndef HASSE_H
#define HASSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HasseStatus {
  HASSE_STATUS_OK = 0,
  HASSE_STATUS_NULL_ARGUMENT = 1,
  HASSE_STATUS_INVALID_UTF8 = 2,
  HASSE_STATUS_PARSE = 3,
  HASSE_STATUS_INVALID_ARGUMENT = 4,
  HASSE_STATUS_EMBEDDING_REJECTED = 5,
  HASSE_STATUS_OUT_OF_RANGE = 6,
  HASSE_STATUS_PANIC = 7,
} HasseStatus;

typedef enum HasseAlgorithm {
  HASSE_ALGORITHM_BORDER = 0,
  HASSE_ALGORITHM_IPRED = 1,
  HASSE_ALGORITHM_ORACLE = 2,
} HasseAlgorithm;

typedef struct HasseDiagram HasseDiagram;

// A lattice together with the embedding iPred runs with.
typedef struct HasseLattice HasseLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call into this library on the same thread.
const char *hasse_last_error(void);

// Parses lattice JSON. Lattices use the meet-irreducible embedding.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum HasseStatus hasse_lattice_from_json(const char *json, struct HasseLattice **out);

// Parses a Burmeister context and builds its concept lattice, embedded by
// intents.
//
// # Safety
// `cxt` must be a nul-terminated string; `out` must be writable.
enum HasseStatus hasse_lattice_from_cxt(const char *cxt, struct HasseLattice **out);

// `fig1a`, `fig1b` or `fig2`.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum HasseStatus hasse_lattice_fixture(const char *name, struct HasseLattice **out);

// A generated family member such as `powerset:4`, `divisor:360`,
// `partition:4` or `random-context:10x6:0.4:7`.
//
// # Safety
// `spec` must be a nul-terminated string; `out` must be writable.
enum HasseStatus hasse_lattice_generate(const char *spec, struct HasseLattice **out);

// Makes iPred map every element to itself. Computing with iPred then
// fails with `EmbeddingRejected` unless the lattice is distributive.
//
// # Safety
// `l` must be a live lattice handle.
enum HasseStatus hasse_lattice_use_identity_embedding(struct HasseLattice *l);

// # Safety
// `l` must be null or a handle from this library not yet freed.
void hasse_lattice_free(struct HasseLattice *l);

// Number of elements, 0 for a null handle.
//
// # Safety
// `l` must be null or a live lattice handle.
size_t hasse_lattice_size(const struct HasseLattice *l);

// Maximum antichain size, 0 for a null handle.
//
// # Safety
// `l` must be null or a live lattice handle.
size_t hasse_lattice_width(const struct HasseLattice *l);

// Name of element `index`, or null when out of range. Owned by the handle.
//
// # Safety
// `l` must be null or a live lattice handle.
const char *hasse_lattice_element_name(const struct HasseLattice *l, size_t index);

// Builds the Hasse diagram along the default reverse topological order.
// iPred validates the lattice's embedding first and fails with
// `EmbeddingRejected` when it does not hold.
//
// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum HasseStatus hasse_diagram_compute(const struct HasseLattice *l,
                                       enum HasseAlgorithm algorithm,
                                       struct HasseDiagram **out);

// # Safety
// `d` must be null or a diagram handle not yet freed.
void hasse_diagram_free(struct HasseDiagram *d);

// Number of cover edges, 0 for a null handle.
//
// # Safety
// `d` must be null or a live diagram handle.
size_t hasse_diagram_edge_count(const struct HasseDiagram *d);

// Element indices of edge `index` as `lower`, `upper`.
//
// # Safety
// `d` must be a live diagram handle; `lower` and `upper` must be writable.
enum HasseStatus hasse_diagram_edge(const struct HasseDiagram *d,
                                    size_t index,
                                    size_t *lower,
                                    size_t *upper);

// Graphviz text for `d`, named by `l`. Release with [`hasse_string_free`].
//
// # Safety
// `l` and `d` must be live handles; `out` must be writable.
enum HasseStatus hasse_diagram_to_dot(const struct HasseLattice *l,
                                      const struct HasseDiagram *d,
                                      char **out);

// Sorted `[lower, upper]` name pairs as JSON. Release with
// [`hasse_string_free`].
//
// # Safety
// `l` and `d` must be live handles; `out` must be writable.
enum HasseStatus hasse_diagram_to_json(const struct HasseLattice *l,
                                       const struct HasseDiagram *d,
                                       char **out);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void hasse_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HASSE_H */
