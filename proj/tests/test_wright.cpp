#include <doctest.h>

#include "bwgf/error.hpp"
#include "bwgf/wright.hpp"

using namespace bwgf;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

TruncatedSeries series(std::initializer_list<const char*> cs) {
  std::vector<LaurentPoly> c;
  for (const char* s : cs) c.push_back(P(s));
  return TruncatedSeries(kX, std::move(c));
}

TruncatedSeries at_t_one(const TruncatedSeries& s) {
  return s.map([](const LaurentPoly& p) { return p.evaluate({{kT, 1}}); });
}

}  // namespace

TEST_CASE("lambert_series") {
  CHECK(lambert_series(4) == series({"0", "1", "1", "3/2", "8/3"}));
  auto l = lambert_series(9);
  // n^(n-1) labelled rooted trees over n! labellings.
  CHECK(l[7] == LaurentPoly(Rational(117649, 5040)));
  CHECK_THROWS_AS(lambert_series(0), DomainError);
}

TEST_CASE("classical_a") {
  CHECK(classical_a(0, 7) == series({"0", "1", "1/2", "1/2", "2/3", "25/24", "9/5", "2401/720"}));
  CHECK(classical_a(1, 6) == series({"0", "1/2", "3/4", "17/12", "71/24", "523/80", "899/60"}));
  CHECK(classical_a(2, 6) == series({"0", "1/8", "7/12", "101/48", "83/12", "12487/576", "3961/60"}));
  CHECK_THROWS_AS(classical_a(kMaxWrightGenus + 1, 3), BoundError);
}

TEST_CASE("colored_tree_triple") {
  TreeTriple tr = colored_tree_triple(6);
  CHECK(tr.tplus[1] == P("t"));
  CHECK(tr.tminus[1].is_zero());
  CHECK(tr.tminus[2] == LaurentPoly(1));
  CHECK(tr.tb[1] == LaurentPoly(1));
  CHECK(tr.total() == series({"0", "t + 1", "t^2 + 3", "(3/2)*t^3 + (9/2)*t + 6", "(8/3)*t^4 + 8*t^2 + 16*t + 16",
                              "(125/24)*t^5 + (205/12)*t^3 + 35*t^2 + (1465/24)*t + 145/3",
                              "(54/5)*t^6 + (157/4)*t^4 + 80*t^3 + (335/2)*t^2 + 240*t + 3073/20"}));
  // Residuals of the defining system.
  LaurentPoly t = LaurentPoly::var(kT);
  auto white = series_exp(tr.tplus + tr.tminus);
  auto shift = [](const TruncatedSeries& f) { return series_mul(TruncatedSeries::identity(kX, f.order()), f); };
  CHECK(tr.tplus == shift(series_mul(white, series_cosh(tr.tb))) * t);
  CHECK(tr.tminus == shift(series_mul(white, series_sinh(tr.tb))));
  CHECK(tr.tb == shift(series_exp(tr.tplus * LaurentPoly::var(kT, -1) + tr.tminus * t + tr.tb)));
}

TEST_CASE("tree series at t = 1 counts two-coloured rooted trees") {
  CHECK(at_t_one(colored_tree_triple(8).total()) == lambert_series(8).rescaled(2));
}

TEST_CASE("w0_series") {
  auto w0 = w0_series(8);
  CHECK(w0[1] == P("t + 1"));
  CHECK(w0[2] == P("(1/2)*t^2 + 3/2"));
  CHECK(at_t_one(w0) == classical_a(0, 8).rescaled(2));
}

TEST_CASE("cycle_z_series") {
  auto z = cycle_z_series(4);
  CHECK(z.component(1) == P("(1/2)*b + (1/2)*w_plus"));
  CHECK(z.component(2) == P("(1/4)*b^2 + (1/2)*b*w_plus + (1/4)*w_plus^2"));
  CHECK(z.component(3) * Rational(6) == P("b^3 + 3*b^2*w_plus + 3*b*w_minus^2 + w_plus^3"));
  CHECK(specialize_full(z.component(3)) * Rational(6) == P("t^3 + 3*t + 4"));
  CHECK(z.is_graded());
}

TEST_CASE("w1_series") {
  CHECK(w1_series(4) == series({"0", "(1/2)*t + 1/2", "(3/4)*t^2 + (1/2)*t + 7/4",
                                "(17/12)*t^3 + (1/2)*t^2 + (17/4)*t + 31/6",
                                "(71/24)*t^4 + (3/4)*t^3 + 9*t^2 + (73/4)*t + 131/8"}));
  CHECK(at_t_one(w1_series(8)) == classical_a(1, 8).rescaled(2));
}

TEST_CASE("gamma_ge3") {
  auto g2 = gamma_ge3(2);
  REQUIRE(g2.size() == 3);
  std::vector<int> verts;
  std::vector<Integer> auts;
  for (const auto& eg : g2) {
    verts.push_back(eg.graph.vertex_count());
    auts.push_back(eg.aut);
  }
  CHECK(verts == std::vector<int>{1, 2, 2});
  std::sort(auts.begin(), auts.end());
  CHECK(auts == std::vector<Integer>{8, 8, 12});

  auto g3 = gamma_ge3(3);
  Multigraph quad(2);
  quad.add_edge(0, 1, 4);
  bool found = false;
  for (const auto& eg : g3) {
    CHECK(eg.graph.is_connected());
    CHECK(loop_number(eg.graph) == 3);
    CHECK(eg.graph.vertex_count() <= 4);
    for (int d : eg.graph.degrees()) CHECK(d >= 3);
    if (canonical_form(eg.graph) == canonical_form(quad)) {
      found = true;
      CHECK(eg.aut == 48);
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(gamma_ge3(1), DomainError);
  CHECK_THROWS_AS(gamma_ge3(kMaxWrightGenus + 1), BoundError);
}

TEST_CASE("z_g_series") {
  Multigraph two_loops(1);
  two_loops.add_edge(0, 0, 2);
  auto z = z_g_series(two_loops, 3);
  CHECK(z.component(1) == P("(1/8)*b + (1/8)*w_plus"));
  CHECK(z.component(2) == P("(1/4)*b^2 + (1/2)*b*w_plus + (1/4)*w_plus^2"));
  CHECK(specialize_full(z.component(2)) == P("(1/4)*t^2 + (1/2)*t + 1/4"));
  Multigraph theta(2);
  theta.add_edge(0, 1, 3);
  auto zt = z_g_series(theta, 2);
  CHECK(zt.component(2) == full_w_polynomial(theta) / Rational(12));
  CHECK(specialize_full(zt.component(2)) == P("(1/12)*t^2 + 1/4"));
  CHECK_THROWS_AS(z_g_series(theta, 1), DomainError);
  CHECK_THROWS_AS(z_g_series(Multigraph::path(3), 4), DomainError);
}

TEST_CASE("w_g_series for loop number two") {
  CHECK(w_g_series(2, 3) == series({"0", "(1/8)*t + 1/8", "(7/12)*t^2 + (1/2)*t + 5/4",
                                    "(101/48)*t^3 + (9/8)*t^2 + (101/16)*t + 175/24"}));
  auto items = itemize_w_g(2, 2);
  REQUIRE(items.size() == 3);
  // Sorted by vertex count: the two-loop vertex first.
  CHECK(items[0].graph.vertex_count() == 1);
  CHECK(items[0].series[2] == P("(1/4)*t^2 + (1/2)*t + 1/4") + P("(1/8)*t^2 + 3/8"));
  std::vector<LaurentPoly> two_vertex{items[1].series[2], items[2].series[2]};
  std::sort(two_vertex.begin(), two_vertex.end(), [](const auto& a, const auto& b) { return a.to_string() < b.to_string(); });
  CHECK(two_vertex == std::vector<LaurentPoly>{P("(1/12)*t^2 + 1/4"), P("(1/8)*t^2 + 3/8")});
  CHECK(at_t_one(w_g_series(2, 8)) == classical_a(2, 8).rescaled(2));
}

TEST_CASE("loop-number series agree with graph enumeration") {
  for (int g = 0; g <= 2; ++g) {
    auto w = w_g_series(g, 5);
    for (int v = 1; v <= 5; ++v) {
      INFO("g=" << g << " v=" << v);
      CHECK(w[v] == enumerated_loop_sum(g, v));
    }
  }
}
