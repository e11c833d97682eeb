#pragma once

#include <vector>

#include "bwgf/graph.hpp"
#include "bwgf/series.hpp"

namespace bwgf {

// Largest loop number accepted by the catalog-based series.
inline constexpr int kMaxWrightGenus = 4;

// L = x exp(L), through x^order.
TruncatedSeries lambert_series(int order);

// Connected graphs of loop number g weighted by 1/|Aut|, through x^order.
TruncatedSeries classical_a(int g, int order);

// Rooted coloured trees: even white root, odd white root, black root.
struct TreeTriple {
  TruncatedSeries tplus;
  TruncatedSeries tminus;
  TruncatedSeries tb;

  TruncatedSeries total() const { return tplus + tminus + tb; }
};

TreeTriple colored_tree_triple(int order);

TruncatedSeries w0_series(int order);

// Degree-d component W~(C_d) / (2d) for d <= max_degree.
GradedMultiSeries cycle_z_series(int max_degree);

TruncatedSeries w1_series(int order);

// Connected multigraphs with minimum degree 3 and loop number g, sorted by
// (vertices, edges, canonical form).
std::vector<EnumeratedGraph> gamma_ge3(int g);

// Sum over per-strand subdivision counts of W~(H), graded by vertex count,
// divided by |Aut G|.
GradedMultiSeries z_g_series(const Multigraph& g, int max_degree);

struct WrightContribution {
  Multigraph graph;
  Integer aut;
  TruncatedSeries series;
};

// One series per member of gamma_ge3(g); their sum is w_g_series(g, order).
std::vector<WrightContribution> itemize_w_g(int g, int order);

TruncatedSeries w_g_series(int g, int order);

// Sum of W_G / |Aut G| over connected multigraphs with v vertices and loop
// number g, by enumeration.
LaurentPoly enumerated_loop_sum(int g, int v);

}  // namespace bwgf
