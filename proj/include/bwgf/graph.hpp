#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bwgf/poly.hpp"

namespace bwgf {

// Undirected multigraph; loops are pairs (a, a). Degree counts a loop twice.
class Multigraph {
 public:
  using Pair = std::pair<int, int>;

  Multigraph() = default;
  explicit Multigraph(int vertices);

  static Multigraph path(int n);
  static Multigraph cycle(int n);

  // Adds m parallel copies of {a, b}.
  void add_edge(int a, int b, int m = 1);
  int add_vertex();

  int vertex_count() const { return vertices_; }
  int edge_count() const;
  int multiplicity(int a, int b) const;
  int loops(int v) const { return multiplicity(v, v); }
  int degree(int v) const;
  std::vector<int> degrees() const;
  // Keys satisfy first <= second; values >= 1.
  const std::map<Pair, int>& edges() const { return edges_; }

  bool is_simple() const;
  bool is_connected() const;
  // Vertex lists of the connected components, each sorted.
  std::vector<std::vector<int>> components() const;
  Multigraph induced(const std::vector<int>& vertices) const;
  // Relabel: vertex v becomes perm[v].
  Multigraph relabeled(const std::vector<int>& perm) const;
  Multigraph disjoint_union(const Multigraph& o) const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  void check_vertex(int v) const;

  int vertices_ = 0;
  std::map<Pair, int> edges_;
};

// Vertex mask with bit v set when vertex v is black.
using Coloring = std::uint64_t;

struct ColorPartition {
  std::vector<int> black, white_even, white_odd;
};

// Brute-force colouring sums are refused above this many vertices.
inline constexpr int kMaxColoringVertices = 26;

ColorPartition color_partition(const Multigraph& g, const std::vector<bool>& black);
// b^|B| w_plus^|W+| w_minus^|W-| for one colouring.
Monomial coloring_monomial(const Multigraph& g, Coloring black);

LaurentPoly full_w_polynomial(const Multigraph& g);
LaurentPoly w_polynomial(const Multigraph& g);
// Sum over colourings that agree with `black` on `fixed`.
LaurentPoly w_restricted(const Multigraph& g, const std::vector<int>& fixed, const std::vector<bool>& black);
LaurentPoly full_w_restricted(const Multigraph& g, const std::vector<int>& fixed, const std::vector<bool>& black);

int loop_number(const Multigraph& g);

inline constexpr int kMaxAutVertices = 10;

Integer aut_order(const Multigraph& g, int max_vertices = kMaxAutVertices);
// Independent count of half-edge relabellings compatible with the vertex
// incidence and the edge pairing; exponential, for small graphs only.
Integer aut_order_half_edges(const Multigraph& g);

// counts[k-1] = number of vertices of degree k.
struct Profile {
  std::vector<int> counts;

  int n(int k) const { return k >= 1 && k <= static_cast<int>(counts.size()) ? counts[k - 1] : 0; }
  int half_edges() const;
  int vertex_count() const;
  void trim();
  std::string to_string() const;
  friend bool operator==(const Profile& a, const Profile& b);
  friend bool operator<(const Profile& a, const Profile& b);
};

Profile profile_of(const Multigraph& g, bool allow_isolated = false);

// Lexicographically smallest relabelled upper-triangular multiplicity list;
// equal for isomorphic graphs only.
std::vector<int> canonical_form(const Multigraph& g);
Multigraph canonical_graph(const Multigraph& g);

struct EnumeratedGraph {
  Multigraph graph;
  Integer aut;
};

inline constexpr int kMaxEnumerationHalfEdges = 14;

// One representative per isomorphism class with the given profile, ordered by
// canonical form.
std::vector<EnumeratedGraph> enumerate_multigraphs(const Profile& profile, bool connected,
                                                   int max_half_edges = kMaxEnumerationHalfEdges);

Multigraph cartesian_product(const Multigraph& g, const Multigraph& h);

}  // namespace bwgf
