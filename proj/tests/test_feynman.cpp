#include <doctest.h>

#include <random>

#include "bwgf/error.hpp"
#include "bwgf/feynman.hpp"

using namespace bwgf;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

LaurentPoly xi(int k, int e = 1) { return LaurentPoly::var(VarRegistry::global().xi(k), e); }

// Perfect matchings of the labels where b-b, w-w and y-z are the only allowed pairs.
long count_pairings(std::vector<char> labels) {
  if (labels.empty()) return 1;
  char first = labels.back();
  labels.pop_back();
  long total = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    char other = labels[i];
    bool ok = (first == 'b' && other == 'b') || (first == 'w' && other == 'w') || (first == 'y' && other == 'z') ||
              (first == 'z' && other == 'y');
    if (!ok) continue;
    auto rest = labels;
    rest.erase(rest.begin() + static_cast<long>(i));
    total += count_pairings(rest);
  }
  return total;
}

Profile profile(std::vector<int> counts) { return Profile{std::move(counts)}; }

}  // namespace

TEST_CASE("wick") {
  CHECK(wick(0) == 1);
  CHECK(wick(3) == 0);
  CHECK(wick(4) == 3);
  CHECK(wick(12) == 10395);
  CHECK_THROWS_AS(wick(-2), DomainError);
}

TEST_CASE("moment_bw") {
  auto mono = [](int b, int w, int y, int z) {
    return Monomial::from_factors({{kB, b}, {kW, w}, {kY, y}, {kZ, z}});
  };
  CHECK(moment_bw(mono(2, 4, 2, 2)) == 6);
  CHECK(moment_bw(mono(0, 0, 2, 1)) == 0);
  CHECK(moment_bw(Monomial()) == 1);
  CHECK_THROWS_AS(moment_bw(Monomial::var(kT)), DomainError);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> e(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    int b = e(rng), w = e(rng), y = e(rng), z = e(rng);
    if (b + w + y + z > 10) continue;
    std::vector<char> labels;
    labels.insert(labels.end(), b, 'b');
    labels.insert(labels.end(), w, 'w');
    labels.insert(labels.end(), y, 'y');
    labels.insert(labels.end(), z, 'z');
    CHECK(moment_bw(mono(b, w, y, z)) == count_pairings(labels));
  }
}

TEST_CASE("flower_poly carries t on an even number of z") {
  CHECK(flower_poly(1) == P("b + y + t*w + z"));
  CHECK(flower_poly(2) == P("b^2 + 2*b*y + y^2 + t*w^2 + 2*w*z + t*z^2"));
  CHECK(bw_expectation(flower_poly(1).pow(2)) == P("t^2 + 3"));
  CHECK(bw_expectation(flower_poly(2)) == P("t + 1"));
  CHECK_THROWS_AS(flower_poly(0), DomainError);
}

TEST_CASE("gaussian series") {
  auto s = gaussian_graph_series(DegreeFilter::up_to(6, 6));
  CHECK(s[0] == LaurentPoly(1));
  CHECK(s[2] * Rational(2) == xi(1, 2) + xi(2));
  CHECK(s[4] * Rational(8) ==
        xi(1, 4) + Rational(6) * xi(1, 2) * xi(2) + Rational(4) * xi(1) * xi(3) + Rational(3) * xi(2, 2) + xi(4));
  LaurentPoly a6 = xi(1, 6) + Rational(15) * xi(1, 4) * xi(2) + Rational(20) * xi(1, 3) * xi(3) +
                   Rational(45) * xi(1, 2) * xi(2, 2) + Rational(15) * xi(1, 2) * xi(4) +
                   Rational(60) * xi(1) * xi(2) * xi(3) + Rational(6) * xi(1) * xi(5) + Rational(15) * xi(2, 3) +
                   Rational(15) * xi(2) * xi(4) + Rational(10) * xi(3, 2) + xi(6);
  CHECK(s[6] * Rational(48) == a6);
}

TEST_CASE("degree-one graphs") {
  auto s = bw_graph_series(DegreeFilter::of({1}, 8));
  LaurentPoly p2 = P("t^2 + 3");
  Integer fact = 1;
  for (int k = 0; k <= 4; ++k) {
    if (k > 0) fact *= k;
    Rational denom = Rational(Integer(1) << k) * Rational(fact);
    CHECK(s[2 * k] == p2.pow(k) * xi(1, 2 * k) / denom);
    if (k < 4) CHECK(s[2 * k + 1].is_zero());
  }
  auto c = connected_bw_series(DegreeFilter::of({1}, 8));
  CHECK(c[2] == p2 * xi(1, 2) / Rational(2));
  for (int n = 3; n <= 8; ++n) CHECK(c[n].is_zero());
}

TEST_CASE("degree one and two connected graphs") {
  auto c = connected_bw_series(DegreeFilter::of({1, 2}, 6));
  CHECK(c[2] * Rational(2) == P("t^2 + 3") * xi(1, 2) + P("t + 1") * xi(2));
  CHECK(profile_coefficient(c, profile({0, 2})) * Rational(4) == P("t^2 + 2*t + 1"));
  // The path on three vertices: W = t^3 + 3t + 4 and |Aut| = 2.
  CHECK(profile_coefficient(c, profile({2, 1})) * Rational(4) == P("2*t^3 + 6*t + 8"));
  CHECK(profile_coefficient(c, profile({2, 2})) * Rational(6) == P("3*t^4 + 6*t^2 + 24*t + 15"));
  CHECK(profile_coefficient(c, profile({0, 3})) * Rational(6) == P("t^3 + 3*t + 4"));
}

TEST_CASE("cubic connected graphs") {
  auto c = connected_bw_series(DegreeFilter::of({3}, 12));
  CHECK(c[6] == Rational(5, 24) * P("t^2 + 3") * xi(3, 2));
  CHECK(c[12] == Rational(5, 16) * P("t^2 + 3").pow(2) * xi(3, 4));
  CHECK(c[12] == enumerated_w_sum(profile({0, 0, 4}), true) * xi(3, 4));
  CHECK(c[12].evaluate({{kT, 1}}) == Rational(5) * xi(3, 4));
}

TEST_CASE("series coefficients agree with graph enumeration") {
  auto filter = DegreeFilter::up_to(8, 8);
  auto full = bw_graph_series(filter);
  auto conn = connected_bw_series(filter);
  for (const auto& p : filtered_profiles(filter)) {
    INFO(p.to_string());
    CHECK(profile_coefficient(full, p) == enumerated_w_sum(p, false));
    CHECK(profile_coefficient(conn, p) == enumerated_w_sum(p, true));
  }
}

TEST_CASE("bw series at t = 1 is the gaussian series with doubled xi") {
  auto filter = DegreeFilter::up_to(10, 10);
  auto conn = connected_bw_series(filter);
  auto gauss = connected_gaussian_series(filter);
  Bindings doubled;
  for (int k = 1; k <= 10; ++k) doubled[VarRegistry::global().xi(k)] = Rational(2) * xi(k);
  for (int n = 0; n <= 10; ++n) CHECK(conn[n].evaluate({{kT, 1}}) == substitute(gauss[n], doubled));
}

TEST_CASE("exp of the connected series is the full series") {
  auto filter = DegreeFilter::of({1, 3, 4}, 10);
  CHECK(series_exp(connected_bw_series(filter) - TruncatedSeries::constant(kU, 10, LaurentPoly())) ==
        bw_graph_series(filter));
}

TEST_CASE("degree filter validation") {
  CHECK_THROWS_AS(DegreeFilter::of({}, 4), DomainError);
  CHECK_THROWS_AS(DegreeFilter::of({0, 1}, 4), DomainError);
  CHECK_THROWS_AS(DegreeFilter::of({1}, 0), DomainError);
  CHECK_THROWS_AS(DegreeFilter::of({1}, kMaxFeynmanHalfEdges + 1), BoundError);
  CHECK(filtered_profiles(DegreeFilter::of({1, 2}, 3)).size() == 5);
}
