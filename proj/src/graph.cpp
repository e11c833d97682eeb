#include "bwgf/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "bwgf/error.hpp"

namespace bwgf {

Multigraph::Multigraph(int vertices) : vertices_(vertices) {
  if (vertices < 0) throw DomainError("negative vertex count");
}

Multigraph Multigraph::path(int n) {
  Multigraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Multigraph Multigraph::cycle(int n) {
  if (n < 1) throw DomainError("cycle needs at least one vertex");
  Multigraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

void Multigraph::check_vertex(int v) const {
  if (v < 0 || v >= vertices_) {
    throw DomainError("vertex " + std::to_string(v) + " out of range for " + std::to_string(vertices_) + " vertices");
  }
}

void Multigraph::add_edge(int a, int b, int m) {
  check_vertex(a);
  check_vertex(b);
  if (m < 1) throw DomainError("edge multiplicity must be at least 1");
  edges_[{std::min(a, b), std::max(a, b)}] += m;
}

int Multigraph::add_vertex() { return vertices_++; }

int Multigraph::edge_count() const {
  int e = 0;
  for (const auto& [p, m] : edges_) e += m;
  return e;
}

int Multigraph::multiplicity(int a, int b) const {
  auto it = edges_.find({std::min(a, b), std::max(a, b)});
  return it == edges_.end() ? 0 : it->second;
}

int Multigraph::degree(int v) const {
  check_vertex(v);
  return degrees()[v];
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> d(vertices_, 0);
  for (const auto& [p, m] : edges_) {
    d[p.first] += m;
    d[p.second] += m;
  }
  return d;
}

bool Multigraph::is_simple() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const auto& kv) {
    return kv.first.first != kv.first.second && kv.second == 1;
  });
}

std::vector<std::vector<int>> Multigraph::components() const {
  std::vector<int> parent(vertices_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [p, m] : edges_) parent[find(p.first)] = find(p.second);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < vertices_; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : groups) out.push_back(std::move(vs));
  std::sort(out.begin(), out.end());
  return out;
}

bool Multigraph::is_connected() const { return vertices_ > 0 && components().size() == 1; }

Multigraph Multigraph::induced(const std::vector<int>& vertices) const {
  std::vector<int> index(vertices_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    check_vertex(vertices[i]);
    if (index[vertices[i]] != -1) throw DomainError("repeated vertex in induced subgraph");
    index[vertices[i]] = static_cast<int>(i);
  }
  Multigraph h(static_cast<int>(vertices.size()));
  for (const auto& [p, m] : edges_) {
    if (index[p.first] >= 0 && index[p.second] >= 0) h.add_edge(index[p.first], index[p.second], m);
  }
  return h;
}

Multigraph Multigraph::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != vertices_) throw DomainError("relabelling has the wrong length");
  Multigraph h(vertices_);
  for (const auto& [p, m] : edges_) h.add_edge(perm[p.first], perm[p.second], m);
  return h;
}

Multigraph Multigraph::disjoint_union(const Multigraph& o) const {
  Multigraph h(vertices_ + o.vertices_);
  h.edges_ = edges_;
  for (const auto& [p, m] : o.edges_) h.add_edge(p.first + vertices_, p.second + vertices_, m);
  return h;
}

// ---------------------------------------------------------------------------
// Colourings

namespace {

void check_coloring_size(const Multigraph& g) {
  if (g.vertex_count() > kMaxColoringVertices) {
    throw BoundError("colouring sum over " + std::to_string(g.vertex_count()) + " vertices exceeds the bound of " +
                     std::to_string(kMaxColoringVertices));
  }
}

// odd[u]: vertices w != u joined to u by an odd number of edges.
std::vector<std::uint64_t> odd_neighbours(const Multigraph& g) {
  std::vector<std::uint64_t> odd(g.vertex_count(), 0);
  for (const auto& [p, m] : g.edges()) {
    if (p.first == p.second || m % 2 == 0) continue;
    odd[p.first] |= std::uint64_t{1} << p.second;
    odd[p.second] |= std::uint64_t{1} << p.first;
  }
  return odd;
}

// counts[nb][nwp] over colourings agreeing with (fixed_mask, fixed_black).
LaurentPoly sum_colorings(const Multigraph& g, std::uint64_t fixed_mask, std::uint64_t fixed_black) {
  check_coloring_size(g);
  int v = g.vertex_count();
  auto odd = odd_neighbours(g);
  std::vector<int> free;
  for (int i = 0; i < v; ++i) {
    if (!(fixed_mask >> i & 1U)) free.push_back(i);
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(v + 1) * (v + 1), 0);
  std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t s = 0; s < total; ++s) {
    std::uint64_t black = fixed_black;
    for (std::size_t k = 0; k < free.size(); ++k) {
      if (s >> k & 1U) black |= std::uint64_t{1} << free[k];
    }
    int nb = std::popcount(black);
    int nwp = 0;
    for (int u = 0; u < v; ++u) {
      if (!(black >> u & 1U) && (std::popcount(black & odd[u]) & 1) == 0) ++nwp;
    }
    ++counts[static_cast<std::size_t>(nb) * (v + 1) + nwp];
  }
  std::vector<Term> terms;
  for (int nb = 0; nb <= v; ++nb) {
    for (int nwp = 0; nb + nwp <= v; ++nwp) {
      std::uint64_t c = counts[static_cast<std::size_t>(nb) * (v + 1) + nwp];
      if (c == 0) continue;
      Monomial m = Monomial::from_factors({{kB, nb}, {kWPlus, nwp}, {kWMinus, v - nb - nwp}});
      terms.push_back({m, Rational(mpz_class(std::to_string(c)))});
    }
  }
  return LaurentPoly::from_terms(std::move(terms));
}

std::pair<std::uint64_t, std::uint64_t> restriction_masks(const Multigraph& g, const std::vector<int>& fixed,
                                                          const std::vector<bool>& black) {
  if (fixed.size() != black.size()) throw DomainError("restricted colouring: vertex and colour lists differ in length");
  check_coloring_size(g);
  std::uint64_t mask = 0, bl = 0;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    int v = fixed[i];
    if (v < 0 || v >= g.vertex_count()) throw DomainError("restricted colouring: vertex " + std::to_string(v) + " out of range");
    std::uint64_t bit = std::uint64_t{1} << v;
    if (mask & bit) throw DomainError("restricted colouring: vertex " + std::to_string(v) + " assigned twice");
    mask |= bit;
    if (black[i]) bl |= bit;
  }
  return {mask, bl};
}

}  // namespace

ColorPartition color_partition(const Multigraph& g, const std::vector<bool>& black) {
  if (static_cast<int>(black.size()) != g.vertex_count()) throw DomainError("colouring length does not match the graph");
  ColorPartition part;
  std::vector<int> black_nbrs(g.vertex_count(), 0);
  for (const auto& [p, m] : g.edges()) {
    if (p.first == p.second) continue;
    if (black[p.second]) black_nbrs[p.first] += m;
    if (black[p.first]) black_nbrs[p.second] += m;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (black[v]) {
      part.black.push_back(v);
    } else if (black_nbrs[v] % 2 == 0) {
      part.white_even.push_back(v);
    } else {
      part.white_odd.push_back(v);
    }
  }
  return part;
}

Monomial coloring_monomial(const Multigraph& g, Coloring black) {
  check_coloring_size(g);
  auto odd = odd_neighbours(g);
  int nb = std::popcount(black), nwp = 0;
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (!(black >> u & 1U) && (std::popcount(black & odd[u]) & 1) == 0) ++nwp;
  }
  return Monomial::from_factors({{kB, nb}, {kWPlus, nwp}, {kWMinus, g.vertex_count() - nb - nwp}});
}

LaurentPoly full_w_polynomial(const Multigraph& g) { return sum_colorings(g, 0, 0); }

LaurentPoly w_polynomial(const Multigraph& g) { return specialize_full(full_w_polynomial(g)); }

LaurentPoly full_w_restricted(const Multigraph& g, const std::vector<int>& fixed, const std::vector<bool>& black) {
  auto [mask, bl] = restriction_masks(g, fixed, black);
  return sum_colorings(g, mask, bl);
}

LaurentPoly w_restricted(const Multigraph& g, const std::vector<int>& fixed, const std::vector<bool>& black) {
  return specialize_full(full_w_restricted(g, fixed, black));
}

int loop_number(const Multigraph& g) {
  if (!g.is_connected()) throw DomainError("loop number requires a connected graph");
  return 1 - g.vertex_count() + g.edge_count();
}

// ---------------------------------------------------------------------------
// Automorphisms

namespace {

Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<std::vector<int>> multiplicity_matrix(const Multigraph& g) {
  int v = g.vertex_count();
  std::vector<std::vector<int>> m(v, std::vector<int>(v, 0));
  for (const auto& [p, k] : g.edges()) {
    m[p.first][p.second] = k;
    m[p.second][p.first] = k;
  }
  return m;
}

}  // namespace

Integer aut_order(const Multigraph& g, int max_vertices) {
  int v = g.vertex_count();
  if (v > max_vertices) {
    throw BoundError("automorphism count over " + std::to_string(v) + " vertices exceeds the bound of " +
                     std::to_string(max_vertices));
  }
  auto mat = multiplicity_matrix(g);
  auto deg = g.degrees();
  std::vector<int> image(v, -1);
  std::vector<bool> used(v, false);
  Integer vertex_perms = 0;
  auto extend = [&](auto& self, int i) -> void {
    if (i == v) {
      ++vertex_perms;
      return;
    }
    for (int c = 0; c < v; ++c) {
      if (used[c] || deg[c] != deg[i] || mat[c][c] != mat[i][i]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = mat[i][j] == mat[c][image[j]];
      if (!ok) continue;
      used[c] = true;
      image[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  extend(extend, 0);

  Integer edge_factor = 1;
  for (const auto& [p, m] : g.edges()) {
    if (p.first == p.second) {
      edge_factor *= factorial(m);
      edge_factor <<= m;
    } else {
      edge_factor *= factorial(m);
    }
  }
  return vertex_perms * edge_factor;
}

Integer aut_order_half_edges(const Multigraph& g) {
  int v = g.vertex_count();
  std::vector<int> at;       // vertex of each half-edge
  std::vector<int> partner;  // the other half of its edge
  for (const auto& [p, m] : g.edges()) {
    for (int k = 0; k < m; ++k) {
      int h = static_cast<int>(at.size());
      at.push_back(p.first);
      at.push_back(p.second);
      partner.push_back(h + 1);
      partner.push_back(h);
    }
  }
  int nh = static_cast<int>(at.size());
  std::vector<int> vperm(v);
  std::iota(vperm.begin(), vperm.end(), 0);
  Integer total = 0;
  do {
    std::vector<int> pi(nh, -1);
    std::vector<bool> taken(nh, false);
    Integer count = 0;
    auto place = [&](auto& self, int h) -> void {
      while (h < nh && pi[h] != -1) ++h;
      if (h == nh) {
        ++count;
        return;
      }
      int s = partner[h];
      for (int c = 0; c < nh; ++c) {
        int cs = partner[c];
        if (taken[c] || taken[cs] || at[c] != vperm[at[h]] || at[cs] != vperm[at[s]]) continue;
        pi[h] = c;
        pi[s] = cs;
        taken[c] = taken[cs] = true;
        self(self, h + 1);
        taken[c] = taken[cs] = false;
        pi[h] = pi[s] = -1;
      }
    };
    place(place, 0);
    total += count;
  } while (std::next_permutation(vperm.begin(), vperm.end()));
  return total;
}

// ---------------------------------------------------------------------------
// Profiles

int Profile::half_edges() const {
  int s = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) s += static_cast<int>(k + 1) * counts[k];
  return s;
}

int Profile::vertex_count() const { return std::accumulate(counts.begin(), counts.end(), 0); }

void Profile::trim() {
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
}

std::string Profile::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < counts.size(); ++k) os << (k ? "," : "") << counts[k];
  os << ')';
  return os.str();
}

bool operator==(const Profile& a, const Profile& b) {
  Profile x = a, y = b;
  x.trim();
  y.trim();
  return x.counts == y.counts;
}

bool operator<(const Profile& a, const Profile& b) {
  Profile x = a, y = b;
  x.trim();
  y.trim();
  return x.counts < y.counts;
}

Profile profile_of(const Multigraph& g, bool allow_isolated) {
  Profile p;
  for (int d : g.degrees()) {
    if (d == 0) {
      if (!allow_isolated) throw DomainError("profile of a graph with an isolated vertex");
      continue;
    }
    if (static_cast<int>(p.counts.size()) < d) p.counts.resize(d, 0);
    ++p.counts[d - 1];
  }
  return p;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

// Isomorphism-invariant colour classes by iterated neighbourhood refinement.
std::vector<int> refine_colors(const std::vector<std::vector<int>>& mat, const std::vector<int>& deg) {
  int v = static_cast<int>(mat.size());
  std::vector<int> color(v);
  auto rank = [v](const auto& sig, std::vector<int>& out) {
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < v; ++i) {
      out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    }
    return static_cast<int>(sorted.size());
  };
  std::vector<std::pair<int, int>> init(v);
  for (int i = 0; i < v; ++i) init[i] = {deg[i], mat[i][i]};
  int classes = rank(init, color);
  while (true) {
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(v);
    for (int i = 0; i < v; ++i) {
      sig[i].first = color[i];
      for (int j = 0; j < v; ++j) {
        if (j != i && mat[i][j] > 0) sig[i].second.emplace_back(color[j], mat[i][j]);
      }
      std::sort(sig[i].second.begin(), sig[i].second.end());
    }
    std::vector<int> next(v);
    int n = rank(sig, next);
    color = std::move(next);
    if (n == classes) break;
    classes = n;
  }
  return color;
}

// order[i] = vertex placed at position i.
std::pair<std::vector<int>, std::vector<int>> canonical_labelling(const Multigraph& g) {
  int v = g.vertex_count();
  auto mat = multiplicity_matrix(g);
  auto color = refine_colors(mat, g.degrees());
  std::vector<int> cell_of_pos(v);
  {
    std::vector<int> sorted = color;
    std::sort(sorted.begin(), sorted.end());
    cell_of_pos = sorted;
  }
  std::vector<int> order(v, -1), best_order;
  std::vector<int> code, best;
  std::vector<bool> used(v, false);
  // Column-major upper triangle: after placing position i, entries of column i are final.
  auto search = [&](auto& self, int i, bool tied) -> void {
    if (i == v) {
      if (best_order.empty() || code < best) {
        best = code;
        best_order = order;
      }
      return;
    }
    for (int c = 0; c < v; ++c) {
      if (used[c] || color[c] != cell_of_pos[i]) continue;
      std::size_t mark = code.size();
      for (int j = 0; j < i; ++j) code.push_back(mat[order[j]][c]);
      code.push_back(mat[c][c]);
      bool still_tied = tied;
      if (!best_order.empty() && tied) {
        auto cmp = std::lexicographical_compare_three_way(code.begin(), code.end(), best.begin(),
                                                          best.begin() + static_cast<long>(code.size()));
        if (cmp > 0) {
          code.resize(mark);
          continue;
        }
        still_tied = cmp == 0;
      }
      used[c] = true;
      order[i] = c;
      self(self, i + 1, still_tied);
      used[c] = false;
      code.resize(mark);
    }
  };
  search(search, 0, true);
  best.insert(best.begin(), v);
  return {best, best_order};
}

}  // namespace

std::vector<int> canonical_form(const Multigraph& g) { return canonical_labelling(g).first; }

Multigraph canonical_graph(const Multigraph& g) {
  auto order = canonical_labelling(g).second;
  std::vector<int> perm(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) perm[order[i]] = i;
  return g.relabeled(perm);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::vector<EnumeratedGraph> connected_with_profile(const Profile& profile) {
  std::vector<int> deg;
  for (int k = static_cast<int>(profile.counts.size()); k >= 1; --k) {
    for (int i = 0; i < profile.n(k); ++i) deg.push_back(k);
  }
  int v = static_cast<int>(deg.size());
  if (v == 0 || profile.half_edges() % 2 != 0) return {};
  int e = profile.half_edges() / 2;
  if (e < v - 1) return {};

  std::vector<int> rem = deg;
  Multigraph g(v);
  std::map<std::vector<int>, Multigraph> found;

  auto closed_component = [&](int upto) {
    // Vertices 0..upto have all their edges placed.
    std::vector<int> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [p, m] : g.edges()) parent[find(p.first)] = find(p.second);
    std::vector<int> open(v, 0), size(v, 0);
    for (int u = 0; u < v; ++u) {
      open[find(u)] += rem[u];
      ++size[find(u)];
    }
    for (int u = 0; u <= upto; ++u) {
      int r = find(u);
      if (open[r] == 0 && size[r] < v) return true;
    }
    return false;
  };

  // Distribute rem[i] among neighbours j >= next.
  auto fill = [&](auto& self, int i, int next) -> void {
    if (rem[i] == 0) {
      if (closed_component(i)) return;
      int ni = i + 1;
      if (ni == v) {
        auto code = canonical_form(g);
        found.emplace(std::move(code), g);
        return;
      }
      // Loops at ni first.
      Multigraph saved = g;
      for (int l = rem[ni] / 2; l >= 0; --l) {
        g = saved;
        if (l > 0) g.add_edge(ni, ni, l);
        rem[ni] -= 2 * l;
        self(self, ni, ni + 1);
        rem[ni] += 2 * l;
      }
      g = saved;
      return;
    }
    if (next >= v) return;
    int tail = 0;
    for (int j = next; j < v; ++j) tail += rem[j];
    if (tail < rem[i]) return;
    Multigraph saved = g;
    for (int m = std::min(rem[i], rem[next]); m >= 0; --m) {
      g = saved;
      if (m > 0) g.add_edge(i, next, m);
      rem[i] -= m;
      rem[next] -= m;
      self(self, i, next + 1);
      rem[i] += m;
      rem[next] += m;
    }
    g = saved;
  };

  Multigraph start = g;
  for (int l = rem[0] / 2; l >= 0; --l) {
    g = start;
    if (l > 0) g.add_edge(0, 0, l);
    rem[0] -= 2 * l;
    fill(fill, 0, 1);
    rem[0] += 2 * l;
  }

  std::vector<EnumeratedGraph> out;
  for (auto& [code, graph] : found) {
    Multigraph c = canonical_graph(graph);
    Integer a = aut_order(c, c.vertex_count());
    out.push_back({std::move(c), std::move(a)});
  }
  return out;
}

std::vector<Profile> sub_profiles(const Profile& p) {
  std::vector<Profile> out{Profile{}};
  for (std::size_t k = 0; k < p.counts.size(); ++k) {
    std::vector<Profile> next;
    for (const auto& q : out) {
      for (int c = 0; c <= p.counts[k]; ++c) {
        Profile r = q;
        r.counts.push_back(c);
        next.push_back(std::move(r));
      }
    }
    out = std::move(next);
  }
  for (auto& q : out) q.trim();
  return out;
}

}  // namespace

std::vector<EnumeratedGraph> enumerate_multigraphs(const Profile& profile, bool connected, int max_half_edges) {
  if (profile.half_edges() > max_half_edges) {
    throw BoundError("profile " + profile.to_string() + " has " + std::to_string(profile.half_edges()) +
                     " half-edges; the bound is " + std::to_string(max_half_edges));
  }
  if (std::any_of(profile.counts.begin(), profile.counts.end(), [](int c) { return c < 0; })) {
    throw DomainError("profile entries must be nonnegative");
  }
  if (connected) return connected_with_profile(profile);

  // Multisets of connected components.
  struct Part {
    Profile profile;
    EnumeratedGraph graph;
  };
  std::vector<Part> parts;
  for (const auto& q : sub_profiles(profile)) {
    if (q.counts.empty()) continue;
    for (auto& eg : connected_with_profile(q)) parts.push_back({q, std::move(eg)});
  }
  std::vector<EnumeratedGraph> out;
  std::vector<int> chosen;
  Profile target = profile;
  target.trim();
  auto pick = [&](auto& self, Profile left, std::size_t min_index) -> void {
    if (left.counts.empty()) {
      Multigraph g;
      Integer aut = 1;
      for (std::size_t i = 0; i < chosen.size();) {
        std::size_t j = i;
        while (j < chosen.size() && chosen[j] == chosen[i]) ++j;
        const auto& part = parts[chosen[i]].graph;
        for (std::size_t k = i; k < j; ++k) g = g.disjoint_union(part.graph);
        Integer pa;
        mpz_pow_ui(pa.get_mpz_t(), part.aut.get_mpz_t(), j - i);
        aut *= pa * factorial(static_cast<int>(j - i));
        i = j;
      }
      out.push_back({std::move(g), std::move(aut)});
      return;
    }
    for (std::size_t i = min_index; i < parts.size(); ++i) {
      const Profile& q = parts[i].profile;
      bool fits = q.counts.size() <= left.counts.size();
      for (std::size_t k = 0; fits && k < q.counts.size(); ++k) fits = q.counts[k] <= left.counts[k];
      if (!fits) continue;
      Profile rest = left;
      for (std::size_t k = 0; k < q.counts.size(); ++k) rest.counts[k] -= q.counts[k];
      rest.trim();
      chosen.push_back(static_cast<int>(i));
      self(self, rest, i);
      chosen.pop_back();
    }
  };
  pick(pick, target, 0);
  return out;
}

Multigraph cartesian_product(const Multigraph& g, const Multigraph& h) {
  if (!g.is_simple() || !h.is_simple()) throw DomainError("cartesian product requires simple graphs");
  int nh = h.vertex_count();
  Multigraph p(g.vertex_count() * nh);
  for (const auto& [e, m] : g.edges()) {
    for (int u = 0; u < nh; ++u) p.add_edge(e.first * nh + u, e.second * nh + u);
  }
  for (int a = 0; a < g.vertex_count(); ++a) {
    for (const auto& [e, m] : h.edges()) p.add_edge(a * nh + e.first, a * nh + e.second);
  }
  return p;
}

}  // namespace bwgf
