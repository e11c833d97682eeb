#include "bwgf/wright.hpp"

#include <algorithm>

#include "bwgf/error.hpp"
#include "bwgf/families.hpp"

namespace bwgf {

namespace {

void check_order(int order) {
  if (order < 1) throw DomainError("series order must be at least 1");
}

// x * f, truncated at f's order.
TruncatedSeries times_x(const TruncatedSeries& f) {
  std::vector<LaurentPoly> c(static_cast<std::size_t>(f.order()) + 1);
  for (int n = 1; n <= f.order(); ++n) c[n] = f[n - 1];
  return TruncatedSeries(f.var(), std::move(c));
}

TruncatedSeries monomial_series(int order, int power, const LaurentPoly& coeff) {
  TruncatedSeries s(kX, order);
  if (power <= order) s.coeff(power) = coeff;
  return s;
}

void check_genus(int g) {
  if (g < 0) throw DomainError("loop number must be nonnegative");
  if (g > kMaxWrightGenus) {
    throw BoundError("loop number " + std::to_string(g) + " exceeds the bound of " + std::to_string(kMaxWrightGenus));
  }
}

// Profiles with v vertices, all degrees >= min_degree, and the given half-edge total.
std::vector<Profile> profiles_with(int v, int half_edges, int min_degree) {
  std::vector<Profile> out;
  std::vector<int> counts(static_cast<std::size_t>(std::max(half_edges, 1)), 0);
  auto rec = [&](auto&& self, int k, int left_v, int left_h) -> void {
    if (left_v == 0) {
      if (left_h == 0) {
        Profile p{counts};
        p.trim();
        out.push_back(std::move(p));
      }
      return;
    }
    if (k > left_h) return;
    for (int n = 0; n <= left_v && n * k <= left_h; ++n) {
      counts[k - 1] = n;
      self(self, k + 1, left_v - n, left_h - n * k);
    }
    counts[k - 1] = 0;
  };
  rec(rec, min_degree, v, half_edges);
  return out;
}

}  // namespace

TruncatedSeries lambert_series(int order) {
  check_order(order);
  TruncatedSeries l = TruncatedSeries::identity(kX, order);
  for (int i = 0; i < order; ++i) l = times_x(series_exp(l));
  if (!(times_x(series_exp(l)) == l)) throw ConsistencyError("rooted-tree series did not stabilize");
  return l;
}

TruncatedSeries classical_a(int g, int order) {
  check_order(order);
  check_genus(g);
  TruncatedSeries l = lambert_series(order);
  if (g == 0) return integrate_xinv(l);
  TruncatedSeries one = TruncatedSeries::constant(kX, order, LaurentPoly(1));
  if (g == 1) return series_log(one - l) * LaurentPoly(Rational(-1, 2));
  TruncatedSeries inv = series_reciprocal(one - l);
  TruncatedSeries out(kX, order);
  for (const auto& eg : gamma_ge3(g)) {
    int v = eg.graph.vertex_count(), e = eg.graph.edge_count();
    out += series_mul(series_pow(l, v), series_pow(inv, e)) * LaurentPoly(Rational(1) / Rational(eg.aut));
  }
  return out;
}

TreeTriple colored_tree_triple(int order) {
  check_order(order);
  LaurentPoly t = LaurentPoly::var(kT), tinv = LaurentPoly::var(kT, -1);
  TreeTriple cur{monomial_series(order, 1, t), monomial_series(order, 2, LaurentPoly(1)),
                 monomial_series(order, 1, LaurentPoly(1))};
  auto step = [&](const TreeTriple& s) {
    TruncatedSeries white = series_exp(s.tplus + s.tminus);
    TruncatedSeries black_children = times_x(series_exp(s.tplus * tinv + s.tminus * t + s.tb));
    return TreeTriple{times_x(series_mul(white, series_cosh(s.tb))) * t, times_x(series_mul(white, series_sinh(s.tb))),
                      black_children};
  };
  for (int i = 0; i < order + 2; ++i) {
    TreeTriple next = step(cur);
    bool stable = next.tplus == cur.tplus && next.tminus == cur.tminus && next.tb == cur.tb;
    cur = std::move(next);
    if (stable) return cur;
  }
  throw ConsistencyError("coloured tree series did not stabilize");
}

TruncatedSeries w0_series(int order) { return integrate_xinv(colored_tree_triple(order).total()); }

GradedMultiSeries cycle_z_series(int max_degree) {
  check_order(max_degree);
  FamilySpec cycles;
  cycles.kind = FamilyKind::kTorus;
  cycles.base = Multigraph(1);
  cycles.mode = CoefficientMode::kFull;
  cycles.multigraph = true;
  auto w = expand_family(cycles, max_degree);
  GradedMultiSeries z(max_degree);
  for (int d = 1; d <= max_degree; ++d) z.add(d, w[d] / Rational(2 * d));
  return z;
}

TruncatedSeries w1_series(int order) {
  TreeTriple tr = colored_tree_triple(order);
  return graded_substitute(cycle_z_series(order), tr.tb, tr.tplus, tr.tminus, order);
}

std::vector<EnumeratedGraph> gamma_ge3(int g) {
  if (g < 2) throw DomainError("the minimum-degree-3 catalog needs loop number at least 2");
  check_genus(g);
  std::vector<std::pair<std::vector<int>, EnumeratedGraph>> keyed;
  for (int v = 1; v <= 2 * g - 2; ++v) {
    int e = v + g - 1;
    for (const auto& p : profiles_with(v, 2 * e, 3)) {
      for (auto& eg : enumerate_multigraphs(p, true, 2 * e)) {
        std::vector<int> key{v, e};
        auto cf = canonical_form(eg.graph);
        key.insert(key.end(), cf.begin(), cf.end());
        keyed.emplace_back(std::move(key), std::move(eg));
      }
    }
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<EnumeratedGraph> out;
  for (auto& [k, eg] : keyed) out.push_back(std::move(eg));
  return out;
}

GradedMultiSeries z_g_series(const Multigraph& g, int max_degree) {
  if (!g.is_connected()) throw DomainError("z series needs a connected graph");
  for (int d : g.degrees()) {
    if (d < 3) throw DomainError("z series needs minimum degree 3");
  }
  int v = g.vertex_count();
  if (max_degree < v) throw DomainError("z series degree bound is below the vertex count");
  std::vector<EdgeRef> strands;
  for (const auto& [p, m] : g.edges()) {
    for (int s = 0; s < m; ++s) strands.push_back({p.first, p.second, s});
  }
  std::vector<LaurentPoly> by_degree(static_cast<std::size_t>(max_degree) + 1);
  std::vector<int> counts(strands.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
    if (idx == strands.size()) {
      int total = 0;
      for (int c : counts) total += c;
      by_degree[v + total] += full_w_polynomial(subdivide(g, strands, counts));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[idx] = c;
      self(self, idx + 1, left - c);
    }
    counts[idx] = 0;
  };
  rec(rec, 0, max_degree - v);
  Rational inv_aut = Rational(1) / Rational(aut_order(g));
  GradedMultiSeries z(max_degree);
  for (int d = v; d <= max_degree; ++d) z.add(d, by_degree[d] * inv_aut);
  return z;
}

std::vector<WrightContribution> itemize_w_g(int g, int order) {
  check_order(order);
  TreeTriple tr = colored_tree_triple(order);
  std::vector<WrightContribution> out;
  for (auto& eg : gamma_ge3(g)) {
    int v = eg.graph.vertex_count();
    TruncatedSeries s(kX, order);
    if (v <= order) s = graded_substitute(z_g_series(eg.graph, order), tr.tb, tr.tplus, tr.tminus, order);
    out.push_back({std::move(eg.graph), eg.aut, std::move(s)});
  }
  return out;
}

TruncatedSeries w_g_series(int g, int order) {
  check_genus(g);
  if (g == 0) return w0_series(order);
  if (g == 1) return w1_series(order);
  TruncatedSeries out(kX, order);
  for (const auto& c : itemize_w_g(g, order)) out += c.series;
  return out;
}

LaurentPoly enumerated_loop_sum(int g, int v) {
  if (g < 0 || v < 1) throw DomainError("loop sum needs g >= 0 and v >= 1");
  int e = v + g - 1;
  if (e == 0) return w_polynomial(Multigraph(1));
  LaurentPoly s;
  for (const auto& p : profiles_with(v, 2 * e, 1)) {
    for (const auto& eg : enumerate_multigraphs(p, true)) s += w_polynomial(eg.graph) / Rational(eg.aut);
  }
  return s;
}

}  // namespace bwgf
