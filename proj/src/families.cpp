#include "bwgf/families.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "bwgf/error.hpp"

namespace bwgf {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kCylinder: return "cylinder";
    case FamilyKind::kExtrusion: return "extrusion";
    case FamilyKind::kTorus: return "torus";
    case FamilyKind::kEarring: return "earring";
    case FamilyKind::kSubdivideOne: return "subdivide-one";
    case FamilyKind::kSubdivideMany: return "subdivide-many";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& name) {
  for (auto k : {FamilyKind::kCylinder, FamilyKind::kExtrusion, FamilyKind::kTorus, FamilyKind::kEarring,
                 FamilyKind::kSubdivideOne, FamilyKind::kSubdivideMany}) {
    if (to_string(k) == name) return k;
  }
  throw ParseError("unknown family kind '" + name + "'");
}

namespace {

bool is_layered(FamilyKind k) {
  return k == FamilyKind::kCylinder || k == FamilyKind::kExtrusion || k == FamilyKind::kTorus ||
         k == FamilyKind::kEarring;
}

bool is_closed(FamilyKind k) { return k == FamilyKind::kTorus || k == FamilyKind::kEarring; }

bool uses_subgraph(FamilyKind k) { return k == FamilyKind::kExtrusion || k == FamilyKind::kEarring; }

// The embedded subgraph: hv[i] is the base vertex of H-vertex i.
struct Embedding {
  std::vector<int> hv;
  Multigraph h;
};

Embedding embedding(const FamilySpec& spec) {
  Embedding e;
  if (!uses_subgraph(spec.kind) || spec.subgraph.empty()) {
    e.hv.resize(spec.base.vertex_count());
    for (int i = 0; i < spec.base.vertex_count(); ++i) e.hv[i] = i;
  } else {
    e.hv = spec.subgraph;
  }
  std::vector<int> index(spec.base.vertex_count(), -1);
  for (std::size_t i = 0; i < e.hv.size(); ++i) index[e.hv[i]] = static_cast<int>(i);
  e.h = Multigraph(static_cast<int>(e.hv.size()));
  if (uses_subgraph(spec.kind) && spec.subgraph_edges) {
    for (const auto& [p, m] : *spec.subgraph_edges) e.h.add_edge(index[p.first], index[p.second], m);
  } else {
    for (const auto& [p, m] : spec.base.edges()) {
      if (index[p.first] >= 0 && index[p.second] >= 0) e.h.add_edge(index[p.first], index[p.second], m);
    }
  }
  return e;
}

// Base graph plus layers 2..L of H; layer 1 is H inside the base. Layer l >= 2
// vertex i has index |base| + (l - 2) |H| + i. `closed` joins layer L back to
// layer 1 with the cycle's edges (a loop for L = 1, a second rung for L = 2).
Multigraph attach_layers(const Multigraph& base, const Embedding& e, int layers, bool closed) {
  Multigraph g = base;
  int h = static_cast<int>(e.hv.size());
  int n0 = base.vertex_count();
  auto vid = [&](int layer, int i) { return layer == 0 ? e.hv[i] : n0 + (layer - 1) * h + i; };
  for (int l = 1; l < layers; ++l) {
    for (int i = 0; i < h; ++i) g.add_vertex();
    for (const auto& [p, m] : e.h.edges()) g.add_edge(vid(l, p.first), vid(l, p.second), m);
    for (int i = 0; i < h; ++i) g.add_edge(vid(l - 1, i), vid(l, i));
  }
  if (closed) {
    for (int i = 0; i < h; ++i) g.add_edge(vid(layers - 1, i), vid(0, i));
  }
  return g;
}

// H x P_layers with layer l vertex i at l |H| + i.
Multigraph layered(const Multigraph& h, int layers) {
  Embedding e;
  e.h = h;
  e.hv.resize(h.vertex_count());
  for (int i = 0; i < h.vertex_count(); ++i) e.hv[i] = i;
  return attach_layers(h, e, layers, false);
}

std::vector<int> layer_vertices(const Multigraph& base, const Embedding& e, int layers) {
  std::vector<int> out = e.hv;
  int h = static_cast<int>(e.hv.size());
  for (int l = 1; l < layers; ++l) {
    for (int i = 0; i < h; ++i) out.push_back(base.vertex_count() + (l - 1) * h + i);
  }
  return out;
}

Multigraph layered_member(const FamilySpec& spec, const Embedding& e, int n) {
  if (n == 0) return Multigraph();
  return attach_layers(spec.base, e, n, is_closed(spec.kind));
}

// Exponents (black, even white) of one colouring.
struct ColoringCounter {
  explicit ColoringCounter(const Multigraph& g) : n(g.vertex_count()), odd(g.vertex_count(), 0) {
    for (const auto& [p, m] : g.edges()) {
      if (p.first == p.second || m % 2 == 0) continue;
      odd[p.first] |= std::uint64_t{1} << p.second;
      odd[p.second] |= std::uint64_t{1} << p.first;
    }
  }
  std::pair<int, int> operator()(std::uint64_t black) const {
    int nwp = 0;
    for (int u = 0; u < n; ++u) {
      if (!(black >> u & 1U) && (std::popcount(black & odd[u]) & 1) == 0) ++nwp;
    }
    return {std::popcount(black), nwp};
  }
  int n;
  std::vector<std::uint64_t> odd;
};

Monomial weight_monomial(int nb, int nwp, int nwm, CoefficientMode mode) {
  if (mode == CoefficientMode::kT) return Monomial::var(kT, nwp);
  return Monomial::from_factors({{kB, nb}, {kWPlus, nwp}, {kWMinus, nwm}});
}

void check_colorable(const Multigraph& g) {
  if (g.vertex_count() > kMaxColoringVertices) {
    throw BoundError("colouring sum over " + std::to_string(g.vertex_count()) + " vertices exceeds the bound of " +
                     std::to_string(kMaxColoringVertices));
  }
}

// Black mask of state S on the given vertices.
std::uint64_t state_black(std::uint64_t s, const std::vector<int>& vertices) {
  std::uint64_t black = 0;
  int k = static_cast<int>(vertices.size());
  for (int i = 0; i < k; ++i) {
    if (!(s >> (k - 1 - i) & 1U)) black |= std::uint64_t{1} << vertices[i];
  }
  return black;
}

std::uint64_t state_of(std::uint64_t black, const std::vector<int>& vertices) {
  std::uint64_t s = 0;
  int k = static_cast<int>(vertices.size());
  for (int i = 0; i < k; ++i) {
    if (!(black >> vertices[i] & 1U)) s |= std::uint64_t{1} << (k - 1 - i);
  }
  return s;
}

void check_states(std::size_t states, std::size_t max_states) {
  if (states > max_states) {
    throw BoundError("transfer system needs " + std::to_string(states) + " states, above the bound of " +
                     std::to_string(max_states));
  }
}

// Compositions of `total` into `parts` values, each in [lo, hi].
void compositions(int total, int parts, int lo, int hi, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int c = lo; c <= std::min(hi, total); ++c) {
    cur.push_back(c);
    compositions(total - c, parts, lo, hi, cur, out);
    cur.pop_back();
  }
}

// All vectors in [lo, hi]^parts.
std::vector<std::vector<int>> box(int parts, int lo, int hi) {
  std::vector<std::vector<int>> out{{}};
  for (int p = 0; p < parts; ++p) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out) {
      for (int c = lo; c <= hi; ++c) {
        next.push_back(v);
        next.back().push_back(c);
      }
    }
    out = std::move(next);
  }
  return out;
}

LaurentPoly member_weight(const Multigraph& g, CoefficientMode mode) {
  return mode == CoefficientMode::kT ? w_polynomial(g) : full_w_polynomial(g);
}

// Insertion step on P_4: states are four consecutive vertices, a new vertex
// goes between the second and third.
TransferSystem insertion_slab(const Multigraph& h, CoefficientMode mode) {
  int nh = h.vertex_count();
  std::vector<int> back, front;
  for (int l = 0; l < 4; ++l) {
    for (int i = 0; i < nh; ++i) {
      back.push_back((l < 2 ? l : l + 1) * nh + i);
      front.push_back((l + 1) * nh + i);
    }
  }
  return slab_system(layered(h, 4), layered(h, 5), back, front, mode);
}

TransferSeries layered_series(const FamilySpec& spec, std::size_t max_states) {
  Embedding e = embedding(spec);
  int h = static_cast<int>(e.hv.size());
  TransferSeries ts;
  if (!is_closed(spec.kind)) {
    check_states(std::size_t{1} << std::min(2 * h, 63), max_states);
    ts.prefix = {LaurentPoly(1), member_weight(spec.base, spec.mode)};
    std::vector<int> back, front;
    for (int i = 0; i < 2 * h; ++i) {
      back.push_back(i);
      front.push_back(i + h);
    }
    TransferComponent c;
    c.system = slab_system(layered(e.h, 2), layered(e.h, 3), back, front, spec.mode);
    Multigraph start = attach_layers(spec.base, e, 2, false);
    c.system.v0 = state_weights(start, layer_vertices(spec.base, e, 2), spec.mode);
    c.shift = 2;
    ts.components.push_back(std::move(c));
    return ts;
  }
  check_states(std::size_t{1} << std::min(4 * h, 63), max_states);
  ts.prefix.assign(4, LaurentPoly());
  for (int n = spec.multigraph ? 0 : 3; n <= 3; ++n) {
    ts.prefix[n] = n == 0 ? LaurentPoly(1) : member_weight(layered_member(spec, e, n), spec.mode);
  }
  TransferComponent c;
  c.system = insertion_slab(e.h, spec.mode);
  Multigraph start = attach_layers(spec.base, e, 4, true);
  c.system.v0 = state_weights(start, layer_vertices(spec.base, e, 4), spec.mode);
  c.shift = 4;
  ts.components.push_back(std::move(c));
  return ts;
}

// Edges in `chosen` are subdivided `full` or more times, one insertion level
// per edge; the others carry the fixed counts in `small`.
TransferComponent subdivision_component(const FamilySpec& spec, const TransferSystem& d1,
                                        const std::vector<int>& chosen, const std::vector<int>& small, int full) {
  std::size_t r = spec.edges.size();
  std::vector<int> counts(r);
  int fixed = 0;
  for (std::size_t i = 0, j = 0; i < r; ++i) {
    if (std::find(chosen.begin(), chosen.end(), static_cast<int>(i)) != chosen.end()) {
      counts[i] = full;
    } else {
      counts[i] = small[j++];
      fixed += counts[i];
    }
  }
  std::vector<std::vector<int>> inner;
  Multigraph start = subdivide(spec.base, spec.edges, counts, &inner);
  std::vector<int> state_vertices;
  for (int k : chosen) state_vertices.insert(state_vertices.end(), inner[k].begin(), inner[k].begin() + 4);

  int m = static_cast<int>(chosen.size());
  std::size_t tuples = std::size_t{1} << (4 * m);
  TransferComponent comp;
  TransferSystem& sys = comp.system;
  sys.dim = tuples * m;
  auto first = state_weights(start, state_vertices, spec.mode);
  sys.v0.assign(sys.dim, LaurentPoly());
  std::copy(first.begin(), first.end(), sys.v0.begin());
  for (int level = 0; level < m; ++level) {
    std::size_t offset = tuples * level;
    int digit_shift = 4 * (m - 1 - level);
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t digit = t >> digit_shift & 15U;
      std::size_t rest = t & ~(std::size_t{15} << digit_shift);
      for (const auto& en : d1.entries) {
        if (en.col != digit) continue;
        std::size_t target = rest | (std::size_t{en.row} << digit_shift);
        sys.entries.push_back({static_cast<std::uint32_t>(offset + target), static_cast<std::uint32_t>(offset + t),
                               en.weight});
      }
      if (level + 1 < m) {
        sys.entries.push_back(
            {static_cast<std::uint32_t>(offset + tuples + t), static_cast<std::uint32_t>(offset + t), LaurentPoly(1)});
      }
    }
  }
  for (std::size_t t = 0; t < tuples; ++t) sys.output.push_back(static_cast<std::uint32_t>(tuples * (m - 1) + t));
  comp.min_steps = m - 1;
  comp.shift = fixed + (full - 1) * m + 1;
  return comp;
}

TransferSeries subdivision_series(const FamilySpec& spec, std::size_t max_states) {
  int r = static_cast<int>(spec.edges.size());
  int lo = spec.min_subdivisions;
  int full = std::max(4, lo);
  TransferSeries ts;
  // Members with every count below `full`.
  for (const auto& counts : box(r, lo, full - 1)) {
    int n = 0;
    for (int c : counts) n += c;
    if (static_cast<int>(ts.prefix.size()) <= n) ts.prefix.resize(n + 1);
    ts.prefix[n] += member_weight(subdivide(spec.base, spec.edges, counts), spec.mode);
  }
  TransferSystem d1 = insertion_slab(Multigraph(1), spec.mode);
  std::size_t total = 0;
  for (int mask = 1; mask < (1 << r); ++mask) {
    std::vector<int> chosen;
    for (int i = 0; i < r; ++i) {
      if (mask >> i & 1) chosen.push_back(i);
    }
    int m = static_cast<int>(chosen.size());
    total += (std::size_t{1} << (4 * m)) * m;
    check_states(total, max_states);
    for (const auto& small : box(r - m, lo, full - 1)) {
      ts.components.push_back(subdivision_component(spec, d1, chosen, small, full));
    }
  }
  return ts;
}

}  // namespace

void validate(const FamilySpec& spec) {
  int v = spec.base.vertex_count();
  if (v == 0) throw DomainError("family base graph has no vertices");
  if (is_layered(spec.kind)) {
    if (!spec.edges.empty()) throw DomainError(to_string(spec.kind) + " family takes no subdivided edges");
    if (!uses_subgraph(spec.kind) && (!spec.subgraph.empty() || spec.subgraph_edges)) {
      throw DomainError(to_string(spec.kind) + " family takes no subgraph");
    }
    std::set<int> seen;
    for (int u : spec.subgraph) {
      if (u < 0 || u >= v) throw DomainError("subgraph vertex " + std::to_string(u) + " out of range");
      if (!seen.insert(u).second) throw DomainError("subgraph vertex " + std::to_string(u) + " repeated");
    }
    if (spec.subgraph_edges) {
      std::map<Multigraph::Pair, int> total;
      for (const auto& [p, m] : *spec.subgraph_edges) {
        Multigraph::Pair key = std::minmax(p.first, p.second);
        bool inside = spec.subgraph.empty() ? key.first >= 0 && key.second < v
                                            : seen.count(key.first) && seen.count(key.second);
        if (!inside) throw DomainError("subgraph edge leaves the subgraph");
        if (m < 1) throw DomainError("subgraph edge multiplicity must be positive");
        total[key] += m;
      }
      for (const auto& [key, m] : total) {
        if (m > spec.base.multiplicity(key.first, key.second)) {
          throw DomainError("subgraph edge {" + std::to_string(key.first) + "," + std::to_string(key.second) +
                            "} is not in the base graph");
        }
      }
    }
    if (spec.min_subdivisions != 0) throw DomainError("min_subdivisions applies to subdivide-many only");
    return;
  }
  if (!spec.subgraph.empty() || spec.subgraph_edges) throw DomainError("subdivision families take no subgraph");
  if (spec.kind == FamilyKind::kSubdivideOne && spec.edges.size() != 1) {
    throw DomainError("subdivide-one needs exactly one edge");
  }
  if (spec.kind == FamilyKind::kSubdivideOne && spec.min_subdivisions != 0) {
    throw DomainError("min_subdivisions applies to subdivide-many only");
  }
  if (spec.edges.empty()) throw DomainError("subdivide-many needs at least one edge");
  if (spec.min_subdivisions < 0) throw DomainError("min_subdivisions must be nonnegative");
  if (spec.edges.size() > 6) throw BoundError("at most 6 subdivided edges are supported");
  subdivide(spec.base, spec.edges, std::vector<int>(spec.edges.size(), 0));
}

Multigraph subdivide(const Multigraph& g, const std::vector<EdgeRef>& edges, const std::vector<int>& counts,
                     std::vector<std::vector<int>>* inner) {
  if (edges.size() != counts.size()) throw DomainError("subdivision counts do not match the edge list");
  std::map<Multigraph::Pair, std::set<int>> strands;
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= g.vertex_count() || e.b >= g.vertex_count()) {
      throw DomainError("subdivided edge endpoint out of range");
    }
    Multigraph::Pair key = std::minmax(e.a, e.b);
    if (e.strand < 0 || e.strand >= g.multiplicity(e.a, e.b)) {
      throw DomainError("no strand " + std::to_string(e.strand) + " of edge {" + std::to_string(e.a) + "," +
                        std::to_string(e.b) + "}");
    }
    if (!strands[key].insert(e.strand).second) throw DomainError("subdivided edge listed twice");
  }
  Multigraph out(g.vertex_count());
  for (const auto& [p, m] : g.edges()) {
    auto it = strands.find(p);
    int kept = m - (it == strands.end() ? 0 : static_cast<int>(it->second.size()));
    if (kept > 0) out.add_edge(p.first, p.second, kept);
  }
  if (inner) inner->assign(edges.size(), {});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (counts[i] < 0) throw DomainError("subdivision count must be nonnegative");
    int prev = edges[i].a;
    for (int k = 0; k < counts[i]; ++k) {
      int v = out.add_vertex();
      if (inner) (*inner)[i].push_back(v);
      out.add_edge(prev, v);
      prev = v;
    }
    out.add_edge(prev, edges[i].b);
  }
  return out;
}

std::vector<Multigraph> realize(const FamilySpec& spec, int n) {
  validate(spec);
  if (n < 0) throw DomainError("family index must be nonnegative");
  if (is_layered(spec.kind)) {
    if (is_closed(spec.kind) && !spec.multigraph && n < 3) return {};
    return {layered_member(spec, embedding(spec), n)};
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(n, static_cast<int>(spec.edges.size()), spec.min_subdivisions, n, cur, comps);
  std::vector<Multigraph> out;
  for (const auto& c : comps) out.push_back(subdivide(spec.base, spec.edges, c));
  return out;
}

LaurentPoly brute_force_coefficient(const FamilySpec& spec, int n) {
  LaurentPoly s;
  for (const auto& g : realize(spec, n)) s += g.vertex_count() == 0 ? LaurentPoly(1) : member_weight(g, spec.mode);
  return s;
}

std::vector<LaurentPoly> state_weights(const Multigraph& g, const std::vector<int>& state_vertices,
                                       CoefficientMode mode) {
  check_colorable(g);
  int v = g.vertex_count();
  std::uint64_t state_mask = 0;
  for (int u : state_vertices) {
    if (u < 0 || u >= v) throw DomainError("state vertex out of range");
    if (state_mask >> u & 1U) throw DomainError("state vertex repeated");
    state_mask |= std::uint64_t{1} << u;
  }
  std::vector<int> free;
  for (int u = 0; u < v; ++u) {
    if (!(state_mask >> u & 1U)) free.push_back(u);
  }
  ColoringCounter count(g);
  std::size_t states = std::size_t{1} << state_vertices.size();
  std::vector<LaurentPoly> out(states);
  std::vector<std::uint64_t> buckets(static_cast<std::size_t>(v + 1) * (v + 1));
  for (std::size_t s = 0; s < states; ++s) {
    std::fill(buckets.begin(), buckets.end(), 0);
    std::uint64_t fixed = state_black(s, state_vertices);
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << free.size()); ++f) {
      std::uint64_t black = fixed;
      for (std::size_t k = 0; k < free.size(); ++k) {
        if (f >> k & 1U) black |= std::uint64_t{1} << free[k];
      }
      auto [nb, nwp] = count(black);
      ++buckets[static_cast<std::size_t>(nb) * (v + 1) + nwp];
    }
    std::vector<Term> terms;
    for (int nb = 0; nb <= v; ++nb) {
      for (int nwp = 0; nb + nwp <= v; ++nwp) {
        std::uint64_t c = buckets[static_cast<std::size_t>(nb) * (v + 1) + nwp];
        if (c) terms.push_back({weight_monomial(nb, nwp, v - nb - nwp, mode), Rational(mpz_class(std::to_string(c)))});
      }
    }
    out[s] = LaurentPoly::from_terms(std::move(terms));
  }
  return out;
}

TransferSystem slab_system(const Multigraph& slab, const Multigraph& extended, const std::vector<int>& back,
                           const std::vector<int>& front, CoefficientMode mode) {
  int s = slab.vertex_count();
  int e = extended.vertex_count();
  if (static_cast<int>(back.size()) != s || static_cast<int>(front.size()) != s) {
    throw DomainError("slab maps must cover the slab");
  }
  std::uint64_t covered = 0;
  for (int u : back) covered |= std::uint64_t{1} << u;
  for (int u : front) covered |= std::uint64_t{1} << u;
  if (covered != (std::uint64_t{1} << e) - 1) throw DomainError("slab maps must cover the extended graph");
  check_colorable(extended);

  std::vector<int> slab_order(s);
  for (int i = 0; i < s; ++i) slab_order[i] = i;
  ColoringCounter slab_count(slab), ext_count(extended);
  std::size_t dim = std::size_t{1} << s;
  std::vector<std::pair<int, int>> slab_exps(dim);
  for (std::size_t st = 0; st < dim; ++st) slab_exps[st] = slab_count(state_black(st, slab_order));

  TransferSystem sys;
  sys.dim = dim;
  for (std::uint64_t black = 0; black < (std::uint64_t{1} << e); ++black) {
    std::uint64_t src = state_of(black, back);
    std::uint64_t dst = state_of(black, front);
    auto [nb, nwp] = ext_count(black);
    auto [sb, swp] = slab_exps[src];
    int nwm = e - nb - nwp, swm = s - sb - swp;
    sys.entries.push_back({static_cast<std::uint32_t>(dst), static_cast<std::uint32_t>(src),
                           LaurentPoly(weight_monomial(nb - sb, nwp - swp, nwm - swm, mode))});
  }
  std::sort(sys.entries.begin(), sys.entries.end(),
            [](const auto& a, const auto& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  return sys;
}

TransferSeries build_family_series(const FamilySpec& spec, std::size_t max_states) {
  validate(spec);
  return is_layered(spec.kind) ? layered_series(spec, max_states) : subdivision_series(spec, max_states);
}

TransferSystem build_transfer(const FamilySpec& spec, std::size_t max_states) {
  return build_family_series(spec, max_states).components.at(0).system;
}

std::vector<LaurentPoly> expand_family(const FamilySpec& spec, int order, std::size_t max_states) {
  if (order < 0) throw DomainError("expansion order must be nonnegative");
  return build_family_series(spec, max_states).expand(order);
}

RationalGF rational_family_gf(const FamilySpec& spec, std::size_t max_states) {
  return extract_rational(build_family_series(spec, max_states));
}

}  // namespace bwgf
