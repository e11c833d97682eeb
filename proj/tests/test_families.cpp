#include <doctest.h>

#include <random>

#include "bwgf/error.hpp"
#include "bwgf/families.hpp"

using namespace bwgf;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

std::vector<LaurentPoly> polys(std::initializer_list<const char*> xs) {
  std::vector<LaurentPoly> out;
  for (const char* s : xs) out.push_back(P(s));
  return out;
}

FamilySpec cylinder(const Multigraph& g, CoefficientMode mode = CoefficientMode::kT) {
  FamilySpec s;
  s.kind = FamilyKind::kCylinder;
  s.base = g;
  s.mode = mode;
  return s;
}

Multigraph triangle_with_tail() {
  Multigraph g = Multigraph::cycle(3);
  g.add_vertex();
  g.add_edge(2, 3);
  return g;
}

void check_against_brute_force(const FamilySpec& spec, int order) {
  auto series = expand_family(spec, order);
  for (int n = 0; n <= order; ++n) {
    INFO(to_string(spec.kind) << " n=" << n);
    CHECK(series[n] == brute_force_coefficient(spec, n));
  }
}

}  // namespace

TEST_CASE("path family transfer system") {
  TransferSystem sys = build_transfer(cylinder(Multigraph(1)));
  LaurentPoly t = LaurentPoly::var(kT), ti = LaurentPoly::var(kT, -1);
  std::vector<std::vector<LaurentPoly>> expected = {
      {1, 0, 1, 0}, {1, 0, 1, 0}, {0, t, 0, ti}, {0, t, 0, t}};
  CHECK(sys.dense() == expected);
  CHECK(sys.v0 == polys({"1", "1", "1", "t^2"}));
  CHECK(sys.apply(sys.v0) == polys({"2", "2", "2*t", "t^3 + t"}));
}

TEST_CASE("path family rational function") {
  RationalGF r = rational_family_gf(cylinder(Multigraph(1)));
  CHECK(r.numerator == polys({"1", "0", "2 - 2*t"}));
  CHECK(r.denominator == polys({"1", "-t - 1", "0", "t^2 - 1"}));
  auto series = expand_family(cylinder(Multigraph(1)), 12);
  for (int n = 0; n <= 12; ++n) CHECK(series[n] == w_polynomial(Multigraph::path(n)));
}

TEST_CASE("ladder family rational function") {
  RationalGF r = rational_family_gf(cylinder(Multigraph::path(2)));
  LaurentPoly t = LaurentPoly::var(kT), a = t - 1, b = t + 1, c = t * t - 1, d = t * t + 3;
  LaurentPoly one(1), zero;
  CHECK(r.numerator == std::vector<LaurentPoly>{one, zero, Rational(-4) * a * a, Rational(-3) * c * c, zero, Rational(4) * a.pow(4) * b * b});
  CHECK(r.denominator == std::vector<LaurentPoly>{one, -d, zero, Rational(2) * c * c, c * c * d, zero, -c.pow(4)});
}

TEST_CASE("cycle family in the full variables") {
  FamilySpec s;
  s.kind = FamilyKind::kTorus;
  s.base = Multigraph(1);
  s.mode = CoefficientMode::kFull;
  s.multigraph = true;
  RationalGF r = rational_family_gf(s);
  CHECK(r.numerator == polys({"1", "0", "0", "-2*b*w_plus^2 + 2*b*w_minus^2"}));
  CHECK(r.denominator == polys({"1", "-b - w_plus", "0", "b*w_plus^2 - b*w_minus^2"}));
  auto series = expand_family(s, 8);
  CHECK(series[1] == P("b + w_plus"));
  CHECK(series[2] == P("b + w_plus").pow(2));
  for (int n = 1; n <= 8; ++n) CHECK(series[n] == full_w_polynomial(Multigraph::cycle(n)));
}

TEST_CASE("two-edge subdivision of the path P3") {
  FamilySpec s;
  s.kind = FamilyKind::kSubdivideMany;
  s.base = Multigraph::path(3);
  s.edges = {{0, 1, 0}, {1, 2, 0}};
  s.min_subdivisions = 4;
  auto series = expand_family(s, 11);
  for (int n = 0; n < 8; ++n) CHECK(series[n].is_zero());
  for (int n = 8; n <= 11; ++n) CHECK(series[n] == LaurentPoly(n - 7) * w_polynomial(Multigraph::path(n + 3)));
  RationalGF r = rational_family_gf(s);
  std::vector<LaurentPoly> num(13);
  num[8] = P("t^11 + 2*t^9 + 13*t^8 + 24*t^7 + 58*t^6 + 146*t^5 + 308*t^4 + 519*t^3 + 566*t^2 + 332*t + 79");
  num[9] = P("-2*t^11 - 2*t^9 - 22*t^8 - 36*t^7 - 72*t^6 - 180*t^5 - 228*t^4 - 26*t^3 + 248*t^2 + 246*t + 74");
  num[10] = P("-2*t^12 + t^11 - 2*t^10 - 24*t^9 - 31*t^8 - 66*t^7 - 192*t^6 - 372*t^5 - 404*t^4 + 9*t^3 + "
              "506*t^2 + 452*t + 125");
  num[11] = P("2*t^12 + 20*t^9 + 30*t^8 + 48*t^7 + 96*t^6 - 8*t^5 - 242*t^4 - 208*t^3 + 64*t^2 + 148*t + 50");
  num[12] = P("t^13 + 11*t^10 + 17*t^9 + 25*t^8 + 72*t^7 + 78*t^6 - 77*t^5 - 238*t^4 - 136*t^3 + 87*t^2 + "
              "123*t + 37");
  CHECK(r.numerator == num);
  CHECK(r.denominator ==
        polys({"1", "-2*t - 2", "t^2 + 2*t + 1", "2*t^2 - 2", "-2*t^3 - 2*t^2 + 2*t + 2", "0", "t^4 - 2*t^2 + 1"}));
}

TEST_CASE("every family kind agrees with brute force") {
  Multigraph g = triangle_with_tail();
  for (auto mode : {CoefficientMode::kT, CoefficientMode::kFull}) {
    check_against_brute_force(cylinder(Multigraph::path(2), mode), 6);
    check_against_brute_force(cylinder(Multigraph::cycle(2), mode), 5);

    FamilySpec ext;
    ext.kind = FamilyKind::kExtrusion;
    ext.base = g;
    ext.subgraph = {3, 2};
    ext.mode = mode;
    check_against_brute_force(ext, 6);
    ext.subgraph_edges = std::vector<std::pair<Multigraph::Pair, int>>{};
    check_against_brute_force(ext, 6);

    FamilySpec torus;
    torus.kind = FamilyKind::kTorus;
    torus.base = Multigraph::path(2);
    torus.mode = mode;
    check_against_brute_force(torus, 7);
    torus.multigraph = true;
    check_against_brute_force(torus, 7);

    FamilySpec ear;
    ear.kind = FamilyKind::kEarring;
    ear.base = g;
    ear.subgraph = {0};
    ear.mode = mode;
    check_against_brute_force(ear, 8);
    ear.multigraph = true;
    ear.subgraph = {1, 2};
    check_against_brute_force(ear, 6);

    FamilySpec one;
    one.kind = FamilyKind::kSubdivideOne;
    one.base = g;
    one.edges = {{2, 3, 0}};
    one.mode = mode;
    check_against_brute_force(one, 8);

    FamilySpec loop;
    loop.kind = FamilyKind::kSubdivideOne;
    loop.base = Multigraph(2);
    loop.base.add_edge(0, 0);
    loop.base.add_edge(0, 1, 2);
    loop.edges = {{0, 0, 0}};
    loop.mode = mode;
    check_against_brute_force(loop, 7);
    loop.edges = {{1, 0, 1}};
    check_against_brute_force(loop, 7);

    FamilySpec many;
    many.kind = FamilyKind::kSubdivideMany;
    many.base = g;
    many.edges = {{0, 1, 0}, {2, 3, 0}};
    many.mode = mode;
    check_against_brute_force(many, 10);
    many.min_subdivisions = 2;
    check_against_brute_force(many, 10);
  }
}

TEST_CASE("walk weights reproduce restricted colouring sums") {
  Multigraph h = Multigraph::path(2);
  TransferSystem sys = build_transfer(cylinder(h));
  auto v = sys.v0;
  for (int layers = 2; layers <= 5; ++layers) {
    Multigraph g = cartesian_product(Multigraph::path(layers), h);
    std::vector<int> last;
    for (int l = layers - 2; l < layers; ++l) {
      for (int i = 0; i < 2; ++i) last.push_back(l * 2 + i);
    }
    CHECK(v == state_weights(g, last, CoefficientMode::kT));
    v = sys.apply(v);
  }
}

TEST_CASE("full-variable expansions specialize to t expansions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    Multigraph g(3);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int e = 0; e < 3; ++e) g.add_edge(pick(rng), pick(rng));
    auto full = expand_family(cylinder(g, CoefficientMode::kFull), 5);
    auto t = expand_family(cylinder(g), 5);
    for (int n = 0; n <= 5; ++n) CHECK(specialize_full(full[n]) == t[n]);
  }
}

TEST_CASE("extracted rational functions reproduce the expansion") {
  FamilySpec ear;
  ear.kind = FamilyKind::kEarring;
  ear.base = triangle_with_tail();
  ear.subgraph = {3};
  RationalGF r = rational_family_gf(ear);
  auto direct = expand_family(ear, 30);
  auto recovered = expand_rational(r, 30);
  for (int n = 0; n <= 30; ++n) CHECK(recovered[n] == direct[n]);
}

TEST_CASE("family validation and bounds") {
  FamilySpec s = cylinder(Multigraph());
  CHECK_THROWS_AS(validate(s), DomainError);
  s = cylinder(Multigraph::path(2));
  s.edges = {{0, 1, 0}};
  CHECK_THROWS_AS(validate(s), DomainError);

  FamilySpec one;
  one.kind = FamilyKind::kSubdivideOne;
  one.base = Multigraph::path(2);
  one.edges = {{0, 1, 1}};
  CHECK_THROWS_AS(validate(one), DomainError);
  one.edges = {{0, 1, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(validate(one), DomainError);

  FamilySpec ext;
  ext.kind = FamilyKind::kExtrusion;
  ext.base = Multigraph::path(3);
  ext.subgraph = {0, 2};
  ext.subgraph_edges = std::vector<std::pair<Multigraph::Pair, int>>{{{0, 2}, 1}};
  CHECK_THROWS_AS(validate(ext), DomainError);

  CHECK_THROWS_AS(build_family_series(cylinder(Multigraph::path(11))), BoundError);
  CHECK_THROWS_AS(build_family_series(cylinder(Multigraph::path(3)), 32), BoundError);
  CHECK_THROWS_AS(parse_family_kind("moebius"), ParseError);
  CHECK(parse_family_kind("subdivide-many") == FamilyKind::kSubdivideMany);
}

TEST_CASE("realize") {
  FamilySpec torus;
  torus.kind = FamilyKind::kTorus;
  torus.base = Multigraph(1);
  CHECK(realize(torus, 2).empty());
  torus.multigraph = true;
  CHECK(realize(torus, 1)[0] == Multigraph::cycle(1));
  CHECK(canonical_form(realize(torus, 2)[0]) == canonical_form(Multigraph::cycle(2)));

  FamilySpec many;
  many.kind = FamilyKind::kSubdivideMany;
  many.base = Multigraph::path(3);
  many.edges = {{0, 1, 0}, {1, 2, 0}};
  CHECK(realize(many, 3).size() == 4);
  many.min_subdivisions = 1;
  CHECK(realize(many, 3).size() == 2);
  CHECK(realize(many, 1).empty());
}
