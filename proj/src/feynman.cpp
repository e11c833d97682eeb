#include "bwgf/feynman.hpp"

#include <algorithm>

#include "bwgf/error.hpp"

namespace bwgf {

DegreeFilter DegreeFilter::of(std::vector<int> degrees, int max_half_edges) {
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  DegreeFilter f{std::move(degrees), max_half_edges};
  f.validate();
  return f;
}

DegreeFilter DegreeFilter::up_to(int max_degree, int max_half_edges) {
  std::vector<int> d;
  for (int k = 1; k <= max_degree; ++k) d.push_back(k);
  return of(std::move(d), max_half_edges);
}

void DegreeFilter::validate() const {
  if (degrees.empty()) throw DomainError("degree filter allows no degrees");
  if (max_half_edges < 1) throw DomainError("half-edge truncation must be at least 1");
  if (max_half_edges > kMaxFeynmanHalfEdges) {
    throw BoundError("half-edge truncation " + std::to_string(max_half_edges) + " exceeds the bound of " +
                     std::to_string(kMaxFeynmanHalfEdges));
  }
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) throw DomainError("vertex degrees must be positive");
    if (i > 0 && degrees[i] <= degrees[i - 1]) throw DomainError("degree list must be strictly increasing");
  }
}

bool DegreeFilter::allows(int k) const { return std::binary_search(degrees.begin(), degrees.end(), k); }

Integer wick(int k) {
  if (k < 0) throw DomainError("wick: negative argument");
  if (k % 2) return 0;
  Integer r = 1;
  for (int j = k - 1; j > 1; j -= 2) r *= j;
  return r;
}

namespace {

Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

bool is_bw_var(VarId v) { return v == kB || v == kW || v == kY || v == kZ; }

}  // namespace

Integer moment_bw(const Monomial& m) {
  int eb = 0, ew = 0, ey = 0, ez = 0;
  for (const auto& [v, e] : m.factors()) {
    if (!is_bw_var(v)) throw DomainError("formal measure: foreign variable " + VarRegistry::global().name(v));
    if (e < 0) throw DomainError("formal measure: negative exponent");
    (v == kB ? eb : v == kW ? ew : v == kY ? ey : ez) = e;
  }
  if (ey != ez) return 0;
  return wick(eb) * wick(ew) * factorial(ey);
}

LaurentPoly bw_expectation(const LaurentPoly& p) {
  std::vector<Term> out;
  for (const auto& term : p.terms()) {
    std::vector<Monomial::Factor> bw, rest;
    for (const auto& f : term.mono.factors()) (is_bw_var(f.first) ? bw : rest).push_back(f);
    Integer m = moment_bw(Monomial::from_factors(bw));
    if (m != 0) out.push_back({Monomial::from_factors(rest), term.coeff * Rational(m)});
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly flower_poly(int n) {
  if (n < 1) throw DomainError("flower size must be positive");
  LaurentPoly f = (LaurentPoly::var(kB) + LaurentPoly::var(kY)).pow(static_cast<unsigned>(n));
  for (int i = 0; i <= n; ++i) {
    Monomial m = Monomial::from_factors({{kW, n - i}, {kZ, i}});
    if (i % 2 == 0) m = m * Monomial::var(kT);
    f += LaurentPoly(m, Rational(binomial(n, i)));
  }
  return f;
}

std::vector<Profile> filtered_profiles(const DegreeFilter& filter) {
  filter.validate();
  std::vector<Profile> out;
  std::vector<int> counts(static_cast<std::size_t>(filter.degrees.back()), 0);
  auto rec = [&](auto&& self, std::size_t idx, int half_edges) -> void {
    if (idx == filter.degrees.size()) {
      if (half_edges > 0) {
        Profile p{counts};
        p.trim();
        out.push_back(std::move(p));
      }
      return;
    }
    int k = filter.degrees[idx];
    for (int n = 0; half_edges + n * k <= filter.max_half_edges; ++n) {
      counts[k - 1] = n;
      self(self, idx + 1, half_edges + n * k);
    }
    counts[k - 1] = 0;
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(), [](const Profile& a, const Profile& b) {
    return a.half_edges() != b.half_edges() ? a.half_edges() < b.half_edges() : a < b;
  });
  return out;
}

Monomial xi_monomial(const Profile& p) {
  std::vector<Monomial::Factor> f;
  for (int k = 1; k <= static_cast<int>(p.counts.size()); ++k) {
    if (p.n(k)) f.emplace_back(VarRegistry::global().xi(k), p.n(k));
  }
  return Monomial::from_factors(std::move(f));
}

namespace {

// prod_k n_k! (k!)^(n_k)
Integer profile_symmetry(const Profile& p) {
  Integer r = 1;
  for (int k = 1; k <= static_cast<int>(p.counts.size()); ++k) {
    r *= factorial(p.n(k));
    for (int i = 0; i < p.n(k); ++i) r *= factorial(k);
  }
  return r;
}

TruncatedSeries assemble(const DegreeFilter& filter, const std::vector<std::pair<Profile, LaurentPoly>>& moments) {
  TruncatedSeries s = TruncatedSeries::constant(kU, filter.max_half_edges, LaurentPoly(1));
  for (const auto& [p, m] : moments) {
    s.coeff(p.half_edges()) += m.times(xi_monomial(p)) / Rational(profile_symmetry(p));
  }
  return s;
}

}  // namespace

TruncatedSeries gaussian_graph_series(const DegreeFilter& filter) {
  std::vector<std::pair<Profile, LaurentPoly>> moments;
  for (auto& p : filtered_profiles(filter)) {
    Integer w = wick(p.half_edges());
    if (w != 0) moments.emplace_back(p, LaurentPoly(Rational(w)));
  }
  return assemble(filter, moments);
}

TruncatedSeries connected_gaussian_series(const DegreeFilter& filter) {
  return series_log(gaussian_graph_series(filter));
}

TruncatedSeries bw_graph_series(const DegreeFilter& filter) {
  filter.validate();
  std::vector<std::pair<Profile, LaurentPoly>> moments;
  std::vector<int> counts(static_cast<std::size_t>(filter.degrees.back()), 0);
  std::vector<LaurentPoly> flowers(filter.degrees.size());
  for (std::size_t i = 0; i < flowers.size(); ++i) flowers[i] = flower_poly(filter.degrees[i]);
  // Depth-first over profiles, extending the running flower product.
  auto rec = [&](auto&& self, std::size_t idx, int half_edges, const LaurentPoly& product) -> void {
    if (idx == filter.degrees.size()) {
      if (half_edges > 0 && half_edges % 2 == 0) {
        Profile p{counts};
        p.trim();
        LaurentPoly m = bw_expectation(product);
        if (!m.is_zero()) moments.emplace_back(std::move(p), std::move(m));
      }
      return;
    }
    int k = filter.degrees[idx];
    LaurentPoly cur = product;
    for (int n = 0; half_edges + n * k <= filter.max_half_edges; ++n) {
      counts[k - 1] = n;
      self(self, idx + 1, half_edges + n * k, cur);
      cur = cur * flowers[idx];
    }
    counts[k - 1] = 0;
  };
  rec(rec, 0, 0, LaurentPoly(1));
  return assemble(filter, moments);
}

TruncatedSeries connected_bw_series(const DegreeFilter& filter) { return series_log(bw_graph_series(filter)); }

LaurentPoly profile_coefficient(const TruncatedSeries& s, const Profile& p) {
  int n = p.half_edges();
  if (n > s.order()) throw DomainError("profile exceeds the series truncation");
  Monomial xi = xi_monomial(p);
  std::vector<Term> out;
  for (const auto& term : s[n].terms()) {
    bool other_xi = false;
    for (const auto& [v, e] : term.mono.factors()) {
      auto k = VarRegistry::global().xi_index(v);
      if (k && e != p.n(*k)) other_xi = true;
    }
    for (const auto& [v, e] : xi.factors()) {
      if (term.mono.exponent(v) != e) other_xi = true;
    }
    if (!other_xi) out.push_back({term.mono / xi, term.coeff});
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly enumerated_w_sum(const Profile& p, bool connected) {
  LaurentPoly s;
  for (const auto& eg : enumerate_multigraphs(p, connected)) s += w_polynomial(eg.graph) / Rational(eg.aut);
  return s;
}

}  // namespace bwgf
