#include <doctest.h>

#include <json.hpp>
#include <random>

#include "bwgf/error.hpp"
#include "bwgf/io.hpp"
#include "bwgf/verify.hpp"

using namespace bwgf;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng) {
  static const VarId vars[] = {kT, kB, kWPlus, kWMinus, kX, VarRegistry::global().xi(3)};
  std::uniform_int_distribution<int> nterms(0, 5), var(0, 5), exp(-3, 6), nf(0, 3), small(-50, 50);
  std::vector<Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<Monomial::Factor> f;
    for (int k = nf(rng); k > 0; --k) f.emplace_back(vars[var(rng)], exp(rng));
    Integer num = small(rng);
    // Some coefficients outside the 64-bit range.
    if (rng() % 3 == 0) num *= Integer("98765432109876543210987");
    Integer den = 1 + std::abs(small(rng));
    Rational c(num, den);
    c.canonicalize();
    terms.push_back({Monomial::from_factors(std::move(f)), c});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("parse_graph: edge list and JSON agree") {
  Multigraph a = parse_graph("# dumbbell\nvertices 2\n0 0\n1 1   # loop\n0 1 2\n");
  Multigraph b = parse_graph(R"( {"vertices": 2, "edges": [[0, 0], [1, 1, 1], [1, 0, 2]]} )");
  CHECK(a == b);
  CHECK(a.multiplicity(0, 1) == 2);
  CHECK(parse_graph("vertices 0\n").vertex_count() == 0);
  CHECK(parse_graph(graph_to_json(a)) == a);
}

TEST_CASE("parse_graph rejects malformed input") {
  CHECK_THROWS_AS(parse_graph(""), ParseError);
  CHECK_THROWS_AS(parse_graph("0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertices 2\n0 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertices 2\n0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertices 2\n0 x\n"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": 2, "edges": [[0, 1]], "extra": 1})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": 2, "edges": [[0]]})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": 2)"), ParseError);
}

TEST_CASE("graph JSON round trip on random multigraphs") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<int> vd(1, 7);
    Multigraph g(vd(rng));
    std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
    for (int k = vd(rng); k > 0; --k) g.add_edge(pick(rng), pick(rng));
    CHECK(parse_graph(graph_to_json(g)) == g);
  }
}

TEST_CASE("polynomial JSON round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    LaurentPoly p = random_poly(rng);
    CHECK(poly_from_json(poly_to_json(p)) == p);
    CHECK(parse_poly(p.to_string()) == p);
  }
  CHECK(poly_to_json(parse_poly("t^2 + 3")) == R"([{"coeff":[1,1],"exps":{"t":2}},{"coeff":[3,1],"exps":{}}])");
  CHECK(poly_from_json(R"([{"coeff":["123456789012345678901234567890","7"],"exps":{"t":-1}}])") ==
        parse_poly("(123456789012345678901234567890/7)*t^-1"));
  CHECK_THROWS_AS(poly_from_json(R"([{"coeff":[1,0],"exps":{}}])"), ParseError);
  CHECK_THROWS_AS(poly_from_json(R"([{"coeff":[1.5,1]}])"), ParseError);
  CHECK_THROWS_AS(poly_from_json(R"({"coeff":[1,1]})"), ParseError);
}

TEST_CASE("family spec JSON") {
  auto spec = parse_family_spec(
      R"({"kind": "extrusion", "base": {"vertices": 4, "edges": [[0,1],[1,2],[0,2],[2,3]]}, "subgraph": [2, 3]})");
  CHECK(spec.kind == FamilyKind::kExtrusion);
  CHECK(spec.mode == CoefficientMode::kT);
  CHECK(spec.subgraph == std::vector<int>{2, 3});
  CHECK(family_spec_to_json(parse_family_spec(family_spec_to_json(spec))) == family_spec_to_json(spec));

  auto sub = parse_family_spec(R"({"kind": "subdivide-many", "base": {"vertices": 3, "edges": [[0,1],[1,2]]},
                                   "edges": [[0,1],[1,2,0]], "min_subdivisions": 4, "mode": "full"})");
  CHECK(sub.edges.size() == 2);
  CHECK(sub.min_subdivisions == 4);
  CHECK(sub.mode == CoefficientMode::kFull);
  CHECK(family_spec_to_json(parse_family_spec(family_spec_to_json(sub))) == family_spec_to_json(sub));

  auto earring = parse_family_spec(R"({"kind": "earring", "base": {"vertices": 2, "edges": [[0,1]]},
                                       "subgraph": [0], "subgraph_edges": [], "multigraph": true})");
  CHECK(earring.multigraph);
  REQUIRE(earring.subgraph_edges.has_value());
  CHECK(family_spec_to_json(parse_family_spec(family_spec_to_json(earring))) == family_spec_to_json(earring));

  CHECK_THROWS_AS(parse_family_spec(R"({"kind": "cylinder", "base": {"vertices": 1}, "colour": 1})"), ParseError);
  CHECK_THROWS_AS(parse_family_spec(R"({"kind": "helix", "base": {"vertices": 1}})"), ParseError);
  CHECK_THROWS_AS(parse_family_spec(R"({"kind": "cylinder", "base": {"vertices": 1}, "mode": "w"})"), ParseError);
  CHECK_THROWS_AS(parse_family_spec(R"({"kind": "cylinder"})"), ParseError);
  CHECK_THROWS_AS(parse_family_spec(R"({"kind": "cylinder", "base": {"vertices": 2}, "subgraph": [5]})"),
                  DomainError);
}

TEST_CASE("series and rational JSON") {
  TruncatedSeries s(kX, {LaurentPoly(1), parse_poly("t + 1")});
  auto j = nlohmann::json::parse(series_to_json(s));
  CHECK(j["var"] == "x");
  REQUIRE(j["coefficients"].size() == 2);
  CHECK(poly_from_json(j["coefficients"][1].dump()) == parse_poly("t + 1"));

  RationalGF r{kX, {LaurentPoly(1)}, {LaurentPoly(1), parse_poly("-t")}};
  auto k = nlohmann::json::parse(rational_to_json(r));
  CHECK(k["numerator"].size() == 1);
  CHECK(poly_from_json(k["denominator"][1].dump()) == parse_poly("-t"));
}

TEST_CASE("verification suites") {
  for (const char* suite : {"families", "feynman", "wright", "aut"}) {
    INFO(suite);
    auto r = run_verify(suite, 3);
    CHECK(r.passed());
    CHECK(!r.checks.empty());
    std::string text = r.to_string();
    CHECK(text.rfind("PASS ", 0) == 0);
    CHECK(text.find("checks passed, PASS\n") != std::string::npos);
  }
  CHECK_THROWS_AS(run_verify("everything", 3), DomainError);
  CHECK_THROWS_AS(run_verify("aut", 0), DomainError);
  CHECK_THROWS_AS(run_verify("wright", verify_bound_limit("wright") + 1), BoundError);

  VerifyReport bad{"demo", 1, {{"ok", true, ""}, {"broken", false, "instance {}"}}};
  CHECK(!bad.passed());
  CHECK(bad.to_string() == "PASS ok\nFAIL broken: instance {}\ndemo (bound 1): 1/2 checks passed, FAIL\n");
}
