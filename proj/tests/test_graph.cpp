#include <doctest.h>

#include <algorithm>
#include <random>

#include "bwgf/error.hpp"
#include "bwgf/graph.hpp"

using namespace bwgf;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

Multigraph one_loop() {
  Multigraph g(1);
  g.add_edge(0, 0);
  return g;
}

Multigraph theta() {
  Multigraph g(2);
  g.add_edge(0, 1, 3);
  return g;
}

Multigraph two_loops() {
  Multigraph g(1);
  g.add_edge(0, 0, 2);
  return g;
}

Multigraph dumbbell() {
  Multigraph g(2);
  g.add_edge(0, 0);
  g.add_edge(1, 1);
  g.add_edge(0, 1);
  return g;
}

// Loops at vertices 0 and 1, plus 0-2, 1-2, 1-3, 2-3.
Multigraph gluing_figure() {
  Multigraph g(4);
  g.add_edge(0, 0);
  g.add_edge(1, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  return g;
}

Multigraph random_multigraph(std::mt19937_64& rng, int max_v, int max_e) {
  std::uniform_int_distribution<int> vd(1, max_v), ed(0, max_e);
  int v = vd(rng);
  Multigraph g(v);
  std::uniform_int_distribution<int> pick(0, v - 1);
  int e = ed(rng);
  for (int i = 0; i < e; ++i) g.add_edge(pick(rng), pick(rng));
  return g;
}

std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("color_partition") {
  Multigraph p2 = Multigraph::path(2);
  auto ww = color_partition(p2, {false, false});
  CHECK(ww.white_even == std::vector<int>{0, 1});
  auto wb = color_partition(p2, {false, true});
  CHECK(wb.white_odd == std::vector<int>{0});
  CHECK(wb.black == std::vector<int>{1});
  CHECK(color_partition(one_loop(), {false}).white_even == std::vector<int>{0});
  Multigraph dbl(2);
  dbl.add_edge(0, 1, 2);
  CHECK(color_partition(dbl, {false, true}).white_even == std::vector<int>{0});
  CHECK_THROWS_AS(color_partition(p2, {true}), DomainError);
}

TEST_CASE("w_polynomial") {
  CHECK(w_polynomial(Multigraph::path(2)) == P("t^2 + 3"));
  CHECK(w_polynomial(Multigraph::path(3)) == P("t^3 + 3*t + 4"));
  CHECK(w_polynomial(Multigraph()) == LaurentPoly(1));
  CHECK(w_polynomial(Multigraph::path(4)) == P("t^4 + 2*t^2 + 8*t + 5"));
}

TEST_CASE("w_restricted") {
  Multigraph p2 = Multigraph::path(2);
  CHECK(w_restricted(p2, {0}, {true}) == LaurentPoly(2));
  CHECK(w_restricted(p2, {0, 1}, {false, false}) == P("t^2"));
  Multigraph g = gluing_figure();
  for (int c = 0; c < 4; ++c) {
    LaurentPoly sum;
    for (int mask = 0; mask < 4; ++mask) sum += w_restricted(g, {c, (c + 2) % 4}, {bool(mask & 1), bool(mask & 2)});
    CHECK(sum == w_polynomial(g));
  }
  CHECK_THROWS_AS(w_restricted(p2, {5}, {true}), DomainError);
}

TEST_CASE("full_w_polynomial") {
  CHECK(full_w_polynomial(Multigraph::path(2)) == P("b^2 + 2*w_minus*b + w_plus^2"));
  CHECK(full_w_polynomial(Multigraph::cycle(2)) == P("b^2 + 2*b*w_plus + w_plus^2"));
  CHECK(full_w_polynomial(Multigraph(1)) == P("b + w_plus"));
  CHECK(full_w_polynomial(one_loop()) == P("b + w_plus"));
  // One black vertex leaves both others odd; two black vertices leave the third even.
  CHECK(full_w_polynomial(Multigraph::cycle(3)) == P("b^3 + 3*b^2*w_plus + 3*b*w_minus^2 + w_plus^3"));
}

TEST_CASE("loop_number") {
  CHECK(loop_number(theta()) == 2);
  CHECK(loop_number(Multigraph::path(6)) == 0);
  CHECK(loop_number(one_loop()) == 1);
  CHECK_THROWS_AS(loop_number(Multigraph(2)), DomainError);
}

TEST_CASE("aut_order") {
  CHECK(aut_order(theta()) == 12);
  CHECK(aut_order(two_loops()) == 8);
  CHECK(aut_order(dumbbell()) == 8);
  CHECK(aut_order(gluing_figure()) == 4);
  Multigraph quad(2);
  quad.add_edge(0, 1, 4);
  CHECK(aut_order(quad) == 48);
  CHECK_THROWS_AS(aut_order(Multigraph::path(11)), BoundError);
}

TEST_CASE("aut_order agrees with the half-edge oracle") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    Multigraph g = random_multigraph(rng, 5, 6);
    CHECK(aut_order(g) == aut_order_half_edges(g));
  }
}

TEST_CASE("profile_of") {
  Profile p = profile_of(gluing_figure());
  CHECK(p.counts == std::vector<int>{0, 1, 2, 1});
  CHECK(p.half_edges() == 12);
  CHECK(profile_of(one_loop()).counts == std::vector<int>{0, 1});
  CHECK(profile_of(Multigraph::path(2)).counts == std::vector<int>{2});
  CHECK_THROWS_AS(profile_of(Multigraph(1)), DomainError);
}

TEST_CASE("canonical form is an isomorphism invariant") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Multigraph g = random_multigraph(rng, 7, 9);
    Multigraph h = g.relabeled(random_permutation(rng, g.vertex_count()));
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(canonical_graph(g) == canonical_graph(h));
  }
  CHECK(canonical_form(theta()) != canonical_form(dumbbell()));
}

TEST_CASE("enumerate_multigraphs") {
  auto cubic2 = enumerate_multigraphs(Profile{{0, 0, 2}}, true);
  REQUIRE(cubic2.size() == 2);
  std::vector<Integer> auts2;
  for (auto& e : cubic2) auts2.push_back(e.aut);
  std::sort(auts2.begin(), auts2.end());
  CHECK(auts2 == std::vector<Integer>{8, 12});

  auto cubic4 = enumerate_multigraphs(Profile{{0, 0, 4}}, true);
  std::vector<Integer> auts4;
  for (auto& e : cubic4) auts4.push_back(e.aut);
  std::sort(auts4.begin(), auts4.end());
  CHECK(auts4 == std::vector<Integer>{8, 16, 16, 24, 48});

  auto p2 = enumerate_multigraphs(Profile{{2}}, true);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].graph == Multigraph::path(2));

  CHECK_THROWS_AS(enumerate_multigraphs(Profile{{16}}, false), BoundError);
}

TEST_CASE("enumerated graphs respect their profile") {
  for (auto counts : std::vector<std::vector<int>>{{2, 1, 2}, {0, 3, 2}, {1, 1, 1, 1}, {4, 0, 2}, {0, 0, 0, 2}}) {
    Profile p{counts};
    for (bool conn : {true, false}) {
      auto graphs = enumerate_multigraphs(p, conn);
      std::vector<std::vector<int>> codes;
      for (const auto& eg : graphs) {
        CHECK(profile_of(eg.graph) == p);
        CHECK(2 * eg.graph.edge_count() == p.half_edges());
        CHECK(eg.aut == aut_order(eg.graph));
        if (conn) CHECK(eg.graph.is_connected());
        codes.push_back(canonical_form(eg.graph));
      }
      std::sort(codes.begin(), codes.end());
      CHECK(std::adjacent_find(codes.begin(), codes.end()) == codes.end());
    }
  }
}

TEST_CASE("enumeration counts labelled configurations") {
  // Sum of 1/|Aut| over all graphs equals the Wick count over the product of k!^n_k.
  // For profile (0,0,2): 6!/(2^3 3!) / (3!)^2 / 2! = 15/72.
  auto all = enumerate_multigraphs(Profile{{0, 0, 2}}, false);
  Rational s = 0;
  for (auto& e : all) s += Rational(1) / Rational(e.aut);
  CHECK(s == Rational(15) / 72);
}

TEST_CASE("cartesian_product") {
  Multigraph c4 = cartesian_product(Multigraph::path(2), Multigraph::path(2));
  CHECK(canonical_form(c4) == canonical_form(Multigraph::cycle(4)));
  Multigraph g = Multigraph::cycle(5);
  CHECK(cartesian_product(g, Multigraph::path(1)) == g);
  // Frozen from an independent brute force over the 2x3 ladder.
  CHECK(w_polynomial(cartesian_product(Multigraph::path(2), Multigraph::path(3))) ==
        P("t^6 + 8*t^3 + 21*t^2 + 24*t + 10"));
  CHECK_THROWS_AS(cartesian_product(theta(), Multigraph::path(2)), DomainError);
}

TEST_CASE("graph invariants on random graphs") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    Multigraph g = random_multigraph(rng, 8, 10);
    int v = g.vertex_count();
    LaurentPoly full = full_w_polynomial(g);
    CHECK(full.is_homogeneous(v));
    CHECK(full.evaluate({{kB, 1}, {kWPlus, 1}, {kWMinus, 1}}) == LaurentPoly(Rational(1 << v)));
    CHECK(w_polynomial(g).evaluate({{kT, 1}}) == LaurentPoly(Rational(1 << v)));
    CHECK(specialize_full(full) == w_polynomial(g));
    Multigraph h = random_multigraph(rng, 5, 6);
    CHECK(w_polynomial(g.disjoint_union(h)) == w_polynomial(g) * w_polynomial(h));
    int deg_sum = 0;
    for (int d : g.degrees()) deg_sum += d;
    CHECK(deg_sum == 2 * g.edge_count());
  }
}
