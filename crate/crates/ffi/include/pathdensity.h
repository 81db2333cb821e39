#ifndef PATHDENSITY_H
#define PATHDENSITY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PdColor {
  PD_COLOR_RED = 0,
  PD_COLOR_BLUE = 1,
} PdColor;

/**
 * Result of every fallible call.
 */
typedef enum PdStatus {
  PD_STATUS_OK = 0,
  PD_STATUS_NULL_POINTER = 1,
  PD_STATUS_INVALID_ARGUMENT = 2,
  PD_STATUS_PARSE = 3,
  PD_STATUS_IO = 4,
  /**
   * A hypothesis of an extraction step does not hold for the input.
   */
  PD_STATUS_HYPOTHESIS = 5,
  /**
   * The computation contradicted the theory it implements.
   */
  PD_STATUS_INVARIANT = 6,
  PD_STATUS_OVERFLOW = 7,
  PD_STATUS_PANIC = 8,
} PdStatus;

/**
 * A geometric colouring prefix.
 */
typedef struct PdColoring PdColoring;

/**
 * A simple forest together with the horizon its density refers to.
 */
typedef struct PdForest PdForest;

/**
 * A totally coloured graph.
 */
typedef struct PdGraph PdGraph;

/**
 * Message of the last failed call on this thread, or null. The string stays
 * valid until the next failing call on the same thread.
 */
const char *pd_last_error(void);

/**
 * Reads a colouring file.
 *
 * # Safety
 * `path` must be a nul-terminated string and `out` a valid pointer.
 */
enum PdStatus pd_graph_read(const char *path, struct PdGraph **out);

/**
 * Writes a colouring file.
 *
 * # Safety
 * `g` must come from this library and `path` must be nul-terminated.
 */
enum PdStatus pd_graph_write(const struct PdGraph *g, const char *path);

/**
 * Complete graph on `n` vertices with uniform random colours.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PdStatus pd_graph_random(size_t n, uint64_t seed, struct PdGraph **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or come from this library.
 */
size_t pd_graph_n(const struct PdGraph *g);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void pd_graph_free(struct PdGraph *g);

/**
 * Geometric colouring with `q = num/den`, the shortest whole-block prefix
 * with at least `n_min` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PdStatus pd_coloring_new_rational(uint64_t num,
                                       uint64_t den,
                                       size_t n_min,
                                       struct PdColoring **out);

/**
 * Geometric colouring with `q = 1 + √2`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PdStatus pd_coloring_new_silver(size_t n_min, struct PdColoring **out);

/**
 * # Safety
 * `c` must be null or come from this library.
 */
size_t pd_coloring_n(const struct PdColoring *c);

/**
 * # Safety
 * `c` must be null or come from this library.
 */
size_t pd_coloring_num_blocks(const struct PdColoring *c);

/**
 * The `k`-th vertex (1-based) of the reordering.
 *
 * # Safety
 * `c` must come from this library and `out` must be a valid pointer.
 */
enum PdStatus pd_coloring_reorder(const struct PdColoring *c, size_t k, size_t *out);

/**
 * Largest breakpoint of the red matching's density profile, as a fraction.
 *
 * # Safety
 * `c` must come from this library; `num` and `den` must be valid pointers.
 */
enum PdStatus pd_coloring_max_breakpoint(const struct PdColoring *c, uint64_t *num, uint64_t *den);

/**
 * The colouring as a complete graph.
 *
 * # Safety
 * `c` must come from this library and `out` must be a valid pointer.
 */
enum PdStatus pd_coloring_to_graph(const struct PdColoring *c, struct PdGraph **out);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void pd_coloring_free(struct PdColoring *c);

/**
 * Forest extracted from the degree sequence at threshold `t`.
 *
 * # Safety
 * `g` must come from this library and `out` must be a valid pointer.
 */
enum PdStatus pd_extract_forest(const struct PdGraph *g, size_t t, struct PdForest **out);

/**
 * Full pipeline with `n = kN`. `preconditions_met` is set to 1 when every
 * hypothesis holds, so that the density bound is guaranteed.
 *
 * # Safety
 * `g` must come from this library; `out` and `preconditions_met` must be
 * valid pointers.
 */
enum PdStatus pd_simple_forest_pipeline(const struct PdGraph *g,
                                        size_t k,
                                        double gamma,
                                        struct PdForest **out,
                                        int32_t *preconditions_met);

/**
 * # Safety
 * `f` must come from this library; `num` and `den` must be valid pointers.
 */
enum PdStatus pd_forest_density(const struct PdForest *f, uint64_t *num, uint64_t *den);

/**
 * # Safety
 * `f` must be null or come from this library.
 */
size_t pd_forest_horizon(const struct PdForest *f);

/**
 * # Safety
 * `f` must come from this library and `out` must be a valid pointer.
 */
enum PdStatus pd_forest_color(const struct PdForest *f, enum PdColor *out);

/**
 * Re-validates the forest and its density against `g`.
 *
 * # Safety
 * `f` and `g` must come from this library.
 */
enum PdStatus pd_forest_check(const struct PdForest *f, const struct PdGraph *g);

/**
 * Writes the forest certificate.
 *
 * # Safety
 * `f` must come from this library and `path` must be nul-terminated.
 */
enum PdStatus pd_forest_write(const struct PdForest *f, const char *path);

/**
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void pd_forest_free(struct PdForest *f);

/**
 * Smallest longest-monochromatic-path length over all 2-edge-colourings of
 * `K_n`, for `n ≤ 7`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PdStatus pd_gg_min_max(size_t n, size_t *out);

/**
 * Exponent `m` of `N = 6 · 4^m` for slack `gamma`.
 *
 * # Safety
 * `m` must be a valid pointer.
 */
enum PdStatus pd_choose_n_exponent(double gamma, size_t *m);

#endif  /* PATHDENSITY_H */
