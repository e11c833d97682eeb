#include "bwgf/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "bwgf/error.hpp"
#include "bwgf/families.hpp"
#include "bwgf/feynman.hpp"
#include "bwgf/io.hpp"
#include "bwgf/wright.hpp"

namespace bwgf {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::string VerifyReport::to_string() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (c.passed) {
      out << "PASS " << c.name << "\n";
    } else {
      ++failed;
      out << "FAIL " << c.name << ": " << c.detail << "\n";
    }
  }
  out << suite << " (bound " << bound << "): " << checks.size() - failed << "/" << checks.size() << " checks passed, "
      << (failed ? "FAIL" : "PASS") << "\n";
  return out.str();
}

namespace {

std::string mismatch(const std::string& what, const LaurentPoly& got, const LaurentPoly& want) {
  return what + ": computed " + got.to_string() + ", expected " + want.to_string();
}

VerifyCheck check(std::string name, const std::function<std::string()>& body) {
  VerifyCheck c{std::move(name), true, {}};
  try {
    c.detail = body();
    c.passed = c.detail.empty();
  } catch (const Error& e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  return c;
}

std::vector<std::pair<std::string, FamilySpec>> family_instances() {
  Multigraph tailed = Multigraph::cycle(3);
  tailed.add_vertex();
  tailed.add_edge(2, 3);
  Multigraph looped(2);
  looped.add_edge(0, 0);
  looped.add_edge(0, 1, 2);

  std::vector<std::pair<std::string, FamilySpec>> out;
  auto add = [&out](std::string name, FamilyKind kind, Multigraph base, auto&& tweak) {
    for (auto mode : {CoefficientMode::kT, CoefficientMode::kFull}) {
      FamilySpec s;
      s.kind = kind;
      s.base = base;
      s.mode = mode;
      tweak(s);
      out.emplace_back(name + (mode == CoefficientMode::kT ? " (t)" : " (full)"), std::move(s));
    }
  };
  auto none = [](FamilySpec&) {};
  add("path cylinder", FamilyKind::kCylinder, Multigraph(1), none);
  add("ladder cylinder", FamilyKind::kCylinder, Multigraph::path(2), none);
  add("extrusion", FamilyKind::kExtrusion, tailed, [](FamilySpec& s) { s.subgraph = {2, 3}; });
  add("simple torus", FamilyKind::kTorus, Multigraph(1), none);
  add("multigraph torus", FamilyKind::kTorus, Multigraph(1), [](FamilySpec& s) { s.multigraph = true; });
  add("earring", FamilyKind::kEarring, tailed, [](FamilySpec& s) {
    s.subgraph = {0};
    s.multigraph = true;
  });
  add("loop subdivision", FamilyKind::kSubdivideOne, looped, [](FamilySpec& s) { s.edges = {{0, 0, 0}}; });
  add("strand subdivision", FamilyKind::kSubdivideOne, looped, [](FamilySpec& s) { s.edges = {{0, 1, 1}}; });
  add("two-edge subdivision", FamilyKind::kSubdivideMany, Multigraph::path(3), [](FamilySpec& s) {
    s.edges = {{0, 1, 0}, {1, 2, 0}};
    s.min_subdivisions = 1;
  });
  return out;
}

void families_suite(VerifyReport& r) {
  int k = r.bound;
  for (const auto& [name, spec] : family_instances()) {
    r.checks.push_back(check(name + ": transfer vs brute force, n <= " + std::to_string(k), [&, &spec = spec] {
      auto series = expand_family(spec, k);
      for (int n = 0; n <= k; ++n) {
        LaurentPoly want = brute_force_coefficient(spec, n);
        if (!(series[n] == want)) {
          return mismatch(family_spec_to_json(spec) + " n=" + std::to_string(n), series[n], want);
        }
      }
      return std::string();
    }));
    r.checks.push_back(check(name + ": rational function reproduces the expansion", [&, &spec = spec] {
      int order = 2 * k + 4;
      auto direct = expand_family(spec, order);
      auto recovered = expand_rational(rational_family_gf(spec), order);
      for (int n = 0; n <= order; ++n) {
        if (!(recovered[n] == direct[n])) {
          return mismatch(family_spec_to_json(spec) + " x^" + std::to_string(n), recovered[n], direct[n]);
        }
      }
      return std::string();
    }));
  }
}

void feynman_suite(VerifyReport& r) {
  int k = r.bound;
  auto filter = DegreeFilter::up_to(k, k);
  auto full = bw_graph_series(filter);
  auto conn = connected_bw_series(filter);
  auto profiles = filtered_profiles(filter);
  for (bool connected : {false, true}) {
    for (int n = 1; n <= k; ++n) {
      std::string name = std::string(connected ? "connected" : "all") + " graphs with " + std::to_string(n) +
                         " half-edges: series vs enumeration";
      r.checks.push_back(check(name, [&] {
        for (const auto& p : profiles) {
          if (p.half_edges() != n) continue;
          LaurentPoly got = profile_coefficient(connected ? conn : full, p);
          LaurentPoly want = enumerated_w_sum(p, connected);
          if (!(got == want)) return mismatch("profile " + p.to_string(), got, want);
        }
        return std::string();
      }));
    }
  }
  r.checks.push_back(check("t = 1 equals the gaussian series with doubled xi", [&] {
    auto gauss = connected_gaussian_series(filter);
    Bindings doubled;
    for (int d : filter.degrees) {
      VarId v = VarRegistry::global().xi(d);
      doubled[v] = LaurentPoly(Monomial::var(v), 2);
    }
    for (int n = 0; n <= k; ++n) {
      LaurentPoly got = conn[n].evaluate({{kT, 1}});
      LaurentPoly want = substitute(gauss[n], doubled);
      if (!(got == want)) return mismatch("u^" + std::to_string(n), got, want);
    }
    return std::string();
  }));
  r.checks.push_back(check("exp of the connected series is the full series", [&] {
    auto e = series_exp(conn);
    for (int n = 0; n <= k; ++n) {
      if (!(e[n] == full[n])) return mismatch("u^" + std::to_string(n), e[n], full[n]);
    }
    return std::string();
  }));
}

TruncatedSeries at_t_one(const TruncatedSeries& s) {
  return s.map([](const LaurentPoly& p) { return p.evaluate({{kT, 1}}); });
}

void wright_suite(VerifyReport& r) {
  int k = r.bound;
  for (int g = 0; g <= 2; ++g) {
    std::string tag = "W_" + std::to_string(g);
    auto w = w_g_series(g, k);
    r.checks.push_back(check(tag + " vs enumeration, v <= " + std::to_string(k), [&] {
      for (int v = 1; v <= k; ++v) {
        LaurentPoly want = enumerated_loop_sum(g, v);
        if (!(w[v] == want)) return mismatch(tag + " x^" + std::to_string(v), w[v], want);
      }
      return std::string();
    }));
    r.checks.push_back(check(tag + " at t = 1 equals A_" + std::to_string(g) + "(2x)", [&] {
      auto got = at_t_one(w);
      auto want = classical_a(g, k).rescaled(2);
      for (int n = 0; n <= k; ++n) {
        if (!(got[n] == want[n])) return mismatch("x^" + std::to_string(n), got[n], want[n]);
      }
      return std::string();
    }));
  }
  r.checks.push_back(check("tree series at t = 1 equals L(2x)", [&] {
    auto got = at_t_one(colored_tree_triple(k).total());
    auto want = lambert_series(k).rescaled(2);
    for (int n = 0; n <= k; ++n) {
      if (!(got[n] == want[n])) return mismatch("x^" + std::to_string(n), got[n], want[n]);
    }
    return std::string();
  }));
}

Multigraph random_multigraph(std::mt19937_64& rng, int max_v, int max_e) {
  int v = std::uniform_int_distribution<int>(1, max_v)(rng);
  int e = std::uniform_int_distribution<int>(0, max_e)(rng);
  Multigraph g(v);
  std::uniform_int_distribution<int> pick(0, v - 1);
  for (int i = 0; i < e; ++i) g.add_edge(pick(rng), pick(rng));
  return g;
}

void aut_suite(VerifyReport& r) {
  int k = r.bound;
  std::mt19937_64 rng(20240611);
  std::vector<Multigraph> graphs;
  for (int i = 0; i < 200; ++i) graphs.push_back(random_multigraph(rng, k, 6));
  r.checks.push_back(check("aut_order vs half-edge relabelling count", [&] {
    for (const auto& g : graphs) {
      Integer a = aut_order(g), b = aut_order_half_edges(g);
      if (a != b) return graph_to_json(g) + ": " + a.get_str() + " vs " + b.get_str();
    }
    return std::string();
  }));
  r.checks.push_back(check("canonical form is invariant under relabelling", [&] {
    for (const auto& g : graphs) {
      std::vector<int> perm(g.vertex_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      if (canonical_form(g) != canonical_form(g.relabeled(perm))) return graph_to_json(g);
    }
    return std::string();
  }));
  r.checks.push_back(check("W polynomial is invariant under relabelling", [&] {
    for (const auto& g : graphs) {
      std::vector<int> perm(g.vertex_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      if (!(full_w_polynomial(g) == full_w_polynomial(g.relabeled(perm)))) return graph_to_json(g);
    }
    return std::string();
  }));
}

}  // namespace

int verify_bound_limit(const std::string& suite) {
  if (suite == "families") return 8;
  if (suite == "feynman") return 12;
  if (suite == "wright") return 8;
  if (suite == "aut") return 8;
  throw DomainError("unknown verification suite '" + suite + "'");
}

VerifyReport run_verify(const std::string& suite, int bound) {
  int limit = verify_bound_limit(suite);
  if (bound < 1) throw DomainError("verification bound must be at least 1");
  if (bound > limit) {
    throw BoundError("bound " + std::to_string(bound) + " exceeds the " + suite + " limit of " + std::to_string(limit));
  }
  VerifyReport r;
  r.suite = suite;
  r.bound = bound;
  if (suite == "families") families_suite(r);
  if (suite == "feynman") feynman_suite(r);
  if (suite == "wright") wright_suite(r);
  if (suite == "aut") aut_suite(r);
  return r;
}

}  // namespace bwgf
