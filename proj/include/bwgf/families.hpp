#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwgf/graph.hpp"
#include "bwgf/transfer.hpp"

namespace bwgf {

enum class FamilyKind { kCylinder, kExtrusion, kTorus, kEarring, kSubdivideOne, kSubdivideMany };
enum class CoefficientMode { kT, kFull };

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& name);

// One strand of the parallel class {a, b}; a == b names a loop.
struct EdgeRef {
  int a = 0;
  int b = 0;
  int strand = 0;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::kCylinder;
  Multigraph base;
  // Extrusion/earring subgraph H, as vertices of `base`. Empty means all of
  // `base`. H carries the induced edges unless `subgraph_edges` is given
  // (pairs of base vertices with multiplicities).
  std::vector<int> subgraph;
  std::optional<std::vector<std::pair<Multigraph::Pair, int>>> subgraph_edges;
  // Subdivided edges F.
  std::vector<EdgeRef> edges;
  CoefficientMode mode = CoefficientMode::kT;
  // Torus/earring: include the n = 0, 1, 2 members (loops and parallel edges).
  bool multigraph = false;
  // Subdivide-many: lower bound on every per-edge count.
  int min_subdivisions = 0;
};

inline constexpr std::size_t kMaxTransferStates = std::size_t{1} << 20;

// Throws DomainError when the spec is inconsistent.
void validate(const FamilySpec& spec);

// The n-th member(s): one graph for every kind except subdivide-many, which
// yields one graph per composition of n over F.
std::vector<Multigraph> realize(const FamilySpec& spec, int n);

// Subdivide each listed strand counts[i] times. inner[i] receives the new
// vertices of edge i in order from a to b.
Multigraph subdivide(const Multigraph& g, const std::vector<EdgeRef>& edges, const std::vector<int>& counts,
                     std::vector<std::vector<int>>* inner = nullptr);

// Slab transfer system: states are colourings of `slab`, transitions are
// colourings of `extended`; slab vertex i sits at back[i] before the step and
// at front[i] after it.
TransferSystem slab_system(const Multigraph& slab, const Multigraph& extended, const std::vector<int>& back,
                           const std::vector<int>& front, CoefficientMode mode);

// Entry S: total weight of the colourings of g whose restriction to
// state_vertices is S. State S has bit (k-1-i) set when state_vertices[i] is
// white, so the first vertex is most significant.
std::vector<LaurentPoly> state_weights(const Multigraph& g, const std::vector<int>& state_vertices,
                                       CoefficientMode mode);

// Prefix plus transfer components whose expansion is the family series.
TransferSeries build_family_series(const FamilySpec& spec, std::size_t max_states = kMaxTransferStates);

// The single transfer system of a family (the first component).
TransferSystem build_transfer(const FamilySpec& spec, std::size_t max_states = kMaxTransferStates);

std::vector<LaurentPoly> expand_family(const FamilySpec& spec, int order,
                                       std::size_t max_states = kMaxTransferStates);
RationalGF rational_family_gf(const FamilySpec& spec, std::size_t max_states = kMaxTransferStates);

// Colouring sum of each realized member; the definitional oracle.
LaurentPoly brute_force_coefficient(const FamilySpec& spec, int n);

}  // namespace bwgf
