#ifndef BWGF_BWGF_H
#define BWGF_BWGF_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define BWGF_API __attribute__((visibility("default")))
#else
#define BWGF_API
#endif

typedef enum {
  BWGF_OK = 0,
  BWGF_ERR_VERIFY = 1,
  BWGF_ERR_PARSE = 2,
  BWGF_ERR_BOUND = 3,
  BWGF_ERR_INVALID = 4,
  BWGF_ERR_INTERNAL = 5
} bwgf_status;

typedef struct bwgf_graph bwgf_graph;
typedef struct bwgf_family bwgf_family;

BWGF_API const char* bwgf_version(void);
/* Message of the last failing call on this thread; "" after success. */
BWGF_API const char* bwgf_last_error(void);
/* Releases every char* handed out through an `out` parameter. */
BWGF_API void bwgf_string_free(char* s);

/* Graph JSON or edge-list text. */
BWGF_API bwgf_status bwgf_graph_parse(const char* text, bwgf_graph** out);
BWGF_API void bwgf_graph_free(bwgf_graph* g);
BWGF_API int bwgf_graph_vertex_count(const bwgf_graph* g);

/* W (full = 0) or the trivariate refinement (full != 0). */
BWGF_API bwgf_status bwgf_w_polynomial(const bwgf_graph* g, int full, int json, char** out);
/* Sum over colourings with vertices[i] black iff black[i] != 0. */
BWGF_API bwgf_status bwgf_w_restricted(const bwgf_graph* g, const int* vertices, const int* black, size_t count,
                                       int full, int json, char** out);

/* Canonical rendering of a polynomial given as text or as JSON (leading '['). */
BWGF_API bwgf_status bwgf_poly_normalize(const char* input, int json, char** out);

BWGF_API bwgf_status bwgf_family_parse(const char* json, bwgf_family** out);
BWGF_API void bwgf_family_free(bwgf_family* f);
/* Coefficients of x^0 .. x^terms. */
BWGF_API bwgf_status bwgf_family_series(const bwgf_family* f, int terms, int json, char** out);
BWGF_API bwgf_status bwgf_family_rational(const bwgf_family* f, int json, char** out);

/* Series in u. t_value, when non-NULL, is a rational "p" or "p/q" substituted
   for t. Ignored together with t when gaussian != 0. */
BWGF_API bwgf_status bwgf_allgraphs(const int* degrees, size_t degree_count, int max_half_edges, int connected,
                                    int gaussian, const char* t_value, int json, char** out);

/* W_g (or A_g with classical != 0, or the rooted tree series with
   trees_only != 0) through x^order. itemize lists per-graph contributions. */
BWGF_API bwgf_status bwgf_wright(int genus, int order, int classical, int trees_only, int itemize, int json,
                                 char** out);

/* Runs a differential suite. The report is set whenever the suite ran;
   BWGF_ERR_VERIFY signals at least one failed comparison. */
BWGF_API bwgf_status bwgf_verify(const char* suite, int bound, char** report);

#ifdef __cplusplus
}
#endif

#endif
