#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <optional>
#include <random>

#include "bwgf/error.hpp"
#include "bwgf/transfer.hpp"

namespace bwgf {

std::vector<LaurentPoly> TransferSystem::apply(const std::vector<LaurentPoly>& v) const {
  std::vector<LaurentPoly> out(dim);
  for (const auto& e : entries) {
    if (!v[e.col].is_zero()) out[e.row] += e.weight * v[e.col];
  }
  return out;
}

LaurentPoly TransferSystem::output_sum(const std::vector<LaurentPoly>& v) const {
  LaurentPoly s;
  if (output.empty()) {
    for (const auto& c : v) s += c;
  } else {
    for (auto i : output) s += v[i];
  }
  return s;
}

std::vector<std::vector<LaurentPoly>> TransferSystem::dense() const {
  std::vector<std::vector<LaurentPoly>> m(dim, std::vector<LaurentPoly>(dim));
  for (const auto& e : entries) m[e.row][e.col] += e.weight;
  return m;
}

std::vector<LaurentPoly> TransferSeries::expand(int order) const {
  std::vector<LaurentPoly> out(static_cast<std::size_t>(order) + 1);
  for (std::size_t n = 0; n < prefix.size() && static_cast<int>(n) <= order; ++n) out[n] += prefix[n];
  for (const auto& c : components) {
    std::vector<LaurentPoly> v = c.system.v0;
    for (int n = 0; n + c.shift <= order; ++n) {
      if (n >= c.min_steps) out[n + c.shift] += c.system.output_sum(v);
      if (n + 1 + c.shift <= order) v = c.system.apply(v);
    }
  }
  return out;
}

std::size_t TransferSeries::state_count() const {
  std::size_t s = 0;
  for (const auto& c : components) s += c.system.dim;
  return s;
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

struct ModProbe {
  std::vector<std::uint64_t> values;  // indexed by VarId
};

// Series coefficients modulo `prime` at the probe point.
std::vector<std::uint64_t> expand_mod(const TransferSeries& ts, int order, const ModProbe& probe,
                                      std::uint64_t prime = kPrime) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(order) + 1, 0);
  auto add = [prime](std::uint64_t a, std::uint64_t b) { return (a + b) % prime; };
  for (std::size_t n = 0; n < ts.prefix.size() && static_cast<int>(n) <= order; ++n) {
    out[n] = add(out[n], ts.prefix[n].eval_mod(probe.values, prime));
  }
  for (const auto& c : ts.components) {
    const auto& sys = c.system;
    std::vector<std::uint64_t> w(sys.entries.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = sys.entries[i].weight.eval_mod(probe.values, prime);
    std::vector<std::uint64_t> v(sys.dim), next(sys.dim);
    for (std::size_t i = 0; i < sys.dim; ++i) v[i] = sys.v0[i].eval_mod(probe.values, prime);
    for (int n = 0; n + c.shift <= order; ++n) {
      if (n >= c.min_steps) {
        std::uint64_t s = 0;
        if (sys.output.empty()) {
          for (auto x : v) s = add(s, x);
        } else {
          for (auto i : sys.output) s = add(s, v[i]);
        }
        out[n + c.shift] = add(out[n + c.shift], s);
      }
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& e = sys.entries[i];
        if (v[e.col] != 0) next[e.row] = add(next[e.row], mulmod(w[i], v[e.col], prime));
      }
      std::swap(v, next);
    }
  }
  return out;
}

// Shortest recurrence: returns c with c[0] = 1 and sum_j c[j] s[n-j] = 0 for
// n >= L, together with L.
std::pair<std::vector<std::uint64_t>, int> berlekamp_massey(const std::vector<std::uint64_t>& s,
                                                             std::uint64_t prime = kPrime) {
  std::vector<std::uint64_t> c{1}, b{1};
  int L = 0, m = 1;
  std::uint64_t bd = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    std::uint64_t d = s[n];
    for (int i = 1; i <= L && i < static_cast<int>(c.size()); ++i) d = (d + mulmod(c[i], s[n - i], prime)) % prime;
    if (d == 0) {
      ++m;
      continue;
    }
    std::uint64_t coef = mulmod(d, invmod(bd, prime), prime);
    std::vector<std::uint64_t> t = c;
    if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
      c[i + m] = (c[i + m] + prime - mulmod(coef, b[i], prime)) % prime;
    }
    if (2 * L <= static_cast<int>(n)) {
      L = static_cast<int>(n) + 1 - L;
      b = std::move(t);
      bd = d;
      m = 1;
    } else {
      ++m;
    }
  }
  c.resize(static_cast<std::size_t>(L) + 1, 0);
  return {c, L};
}

int trimmed_degree(const std::vector<std::uint64_t>& v) {
  int d = static_cast<int>(v.size()) - 1;
  while (d >= 0 && v[d] == 0) --d;
  return d;
}

std::vector<VarId> series_variables(const TransferSeries& ts) {
  std::vector<VarId> vars;
  auto note = [&vars](const LaurentPoly& p) {
    for (VarId v : p.variables()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  };
  for (const auto& p : ts.prefix) note(p);
  for (const auto& c : ts.components) {
    for (const auto& e : c.system.entries) note(e.weight);
    for (const auto& p : c.system.v0) note(p);
  }
  return vars;
}

std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> m, int cols) {
  std::size_t rows = m.size(), rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    std::uint64_t inv = invmod(m[rank][col], kPrime);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint64_t f = mulmod(m[i][col], inv, kPrime);
      for (int k = col; k < cols; ++k) m[i][k] = (m[i][k] + kPrime - mulmod(f, m[rank][k], kPrime)) % kPrime;
    }
    ++rank;
  }
  return rank;
}

std::uint64_t det_mod(std::vector<std::vector<std::uint64_t>> m) {
  std::size_t n = m.size();
  std::uint64_t det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = (kPrime - det) % kPrime;
    }
    det = mulmod(det, m[col][col], kPrime);
    std::uint64_t inv = invmod(m[col][col], kPrime);
    for (std::size_t r = col + 1; r < n; ++r) {
      std::uint64_t f = mulmod(m[r][col], inv, kPrime);
      if (f == 0) continue;
      for (std::size_t k = col; k < n; ++k) m[r][k] = (m[r][k] + kPrime - mulmod(f, m[col][k], kPrime)) % kPrime;
    }
  }
  return det;
}

// Coefficients (ascending) of the polynomial of degree < xs.size() through
// the points (xs[i], ys[i]); the xs must be distinct.
std::vector<std::uint64_t> interpolate_1d(const std::vector<std::uint64_t>& xs, std::vector<std::uint64_t> ys,
                                          std::uint64_t p) {
  std::size_t n = xs.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      std::uint64_t num = (ys[i] + p - ys[i - 1]) % p;
      ys[i] = mulmod(num, invmod((xs[i] + p - xs[i - k]) % p, p), p);
    }
  }
  std::vector<std::uint64_t> c(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t i = n - 1; i > 0; --i) c[i] = (c[i - 1] + p - mulmod(c[i], xs[k], p)) % p;
    c[0] = (ys[k] + p - mulmod(c[0], xs[k], p)) % p;
  }
  return c;
}

// n/d with |n|, d <= sqrt(m/2) and n = a d mod m, if one exists.
std::optional<Rational> reconstruct_rational(const Integer& a, const Integer& m) {
  Integer bound = sqrt(Integer(m / 2));
  Integer r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

// Largest evaluation grid for the interpolated denominator.
constexpr std::size_t kMaxInterpolationPoints = std::size_t{1} << 18;
constexpr int kInterpolationPrimes = 8;

// The denominator q (q_0 = 1, degree dq) recovered from its values on a grid
// of points modulo several primes. q divides the product of det(I - x A), so
// the exponent of v in q_j lies in [j lo_v, j hi_v], lo_v <= 0 <= hi_v being
// the exponent range of v over the transfer weights; mu = prod v^-lo_v makes
// mu^j q_j a polynomial. Weights homogeneous of one degree make q_j
// homogeneous, which removes one variable. Each candidate goes to `accept`,
// which checks it exactly.
std::optional<RationalGF> interpolate_denominator(
    const TransferSeries& ts, int dq, int terms,
    const std::function<std::optional<RationalGF>(std::vector<LaurentPoly>)>& accept) {
  std::map<VarId, std::pair<int, int>> range;  // var -> (lo, hi)
  int common = 0;
  bool homogeneous = true, first = true;
  for (const auto& c : ts.components) {
    for (const auto& e : c.system.entries) {
      for (const auto& t : e.weight.terms()) {
        int deg = 0;
        for (const auto& [v, x] : t.mono.factors()) {
          auto& [lo, hi] = range[v];
          lo = std::min(lo, x);
          hi = std::max(hi, x);
          deg += x;
        }
        if (first) common = deg;
        if (deg != common) homogeneous = false;
        first = false;
      }
    }
  }
  std::vector<VarId> avars;
  int mu_degree = 0;
  for (const auto& [v, r] : range) {
    avars.push_back(v);
    mu_degree -= r.first;
  }
  homogeneous = homogeneous && avars.size() >= 2;
  std::vector<VarId> free(avars.begin() + (homogeneous ? 1 : 0), avars.end());
  const std::size_t nfree = free.size();
  std::vector<std::size_t> width(nfree);
  std::size_t points = 1;
  for (std::size_t f = 0; f < nfree; ++f) {
    auto [lo, hi] = range[free[f]];
    width[f] = static_cast<std::size_t>(dq) * static_cast<std::size_t>(hi - lo) + 1;
    if (points > kMaxInterpolationPoints / width[f]) return std::nullopt;
    points *= width[f];
  }

  auto all_vars = series_variables(ts);
  std::size_t nvars = VarRegistry::global().size();
  std::mt19937_64 rng(0x1a7e5eedULL);
  // residues[j - 1][flat exponent index of mu^j q_j], combined over the
  // primes so far.
  std::vector<std::vector<Integer>> residues(static_cast<std::size_t>(dq), std::vector<Integer>(points));
  Integer modulus = 1;
  Integer prime_z = Integer(1) << 62;
  for (int pi = 0; pi < kInterpolationPrimes; ++pi) {
    mpz_nextprime(prime_z.get_mpz_t(), prime_z.get_mpz_t());
    const std::uint64_t p = prime_z.get_ui();
    std::uniform_int_distribution<std::uint64_t> pick(2, p - 2);
    std::vector<std::vector<std::uint64_t>> axis(nfree);
    std::vector<std::vector<std::uint64_t>> vals(static_cast<std::size_t>(dq), std::vector<std::uint64_t>(points));
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      ModProbe probe{std::vector<std::uint64_t>(nvars, 1)};
      for (VarId v : all_vars) probe.values[v] = pick(rng);
      if (homogeneous) probe.values[avars[0]] = 1;
      for (std::size_t f = 0; f < nfree; ++f) {
        auto& xs = axis[f];
        xs.clear();
        while (xs.size() < width[f]) {
          std::uint64_t x = pick(rng);
          if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        }
      }
      ok = true;
      for (std::size_t flat = 0; flat < points && ok; ++flat) {
        std::size_t rest = flat;
        for (std::size_t f = 0; f < nfree; ++f) {
          probe.values[free[f]] = axis[f][rest % width[f]];
          rest /= width[f];
        }
        std::uint64_t mu = 1;
        for (VarId v : avars) mu = mulmod(mu, powmod(probe.values[v], static_cast<std::uint64_t>(-range[v].first), p), p);
        auto [c, L] = berlekamp_massey(expand_mod(ts, terms - 1, probe, p), p);
        if (trimmed_degree(c) != dq) {
          ok = false;
          break;
        }
        std::uint64_t scale = 1;
        for (int j = 1; j <= dq; ++j) {
          scale = mulmod(scale, mu, p);
          vals[j - 1][flat] = mulmod(c[j], scale, p);
        }
      }
    }
    if (!ok) return std::nullopt;

    const Integer pz(prime_z);
    Integer inv_mod_p;
    mpz_invert(inv_mod_p.get_mpz_t(), Integer(modulus % pz).get_mpz_t(), pz.get_mpz_t());
    for (int j = 1; j <= dq; ++j) {
      auto& data = vals[j - 1];
      std::size_t stride = 1;
      for (std::size_t f = 0; f < nfree; stride *= width[f], ++f) {
        std::vector<std::uint64_t> ys(width[f]);
        for (std::size_t base = 0; base < points; ++base) {
          if ((base / stride) % width[f] != 0) continue;
          for (std::size_t i = 0; i < width[f]; ++i) ys[i] = data[base + i * stride];
          auto coeffs = interpolate_1d(axis[f], ys, p);
          for (std::size_t i = 0; i < width[f]; ++i) data[base + i * stride] = coeffs[i];
        }
      }
      for (std::size_t flat = 0; flat < points; ++flat) {
        Integer& r = residues[j - 1][flat];
        Integer diff = (Integer(std::to_string(data[flat])) - r) % pz;
        if (diff < 0) diff += pz;
        Integer k = (diff * inv_mod_p) % pz;
        r += modulus * k;
      }
    }
    modulus *= pz;

    std::vector<LaurentPoly> q(static_cast<std::size_t>(dq) + 1);
    q[0] = LaurentPoly(1);
    bool valid = true;
    for (int j = 1; j <= dq && valid; ++j) {
      std::vector<Term> out;
      for (std::size_t flat = 0; flat < points && valid; ++flat) {
        if (residues[j - 1][flat] == 0) continue;
        auto c = reconstruct_rational(residues[j - 1][flat], modulus);
        if (!c) {
          valid = false;
          break;
        }
        // Exponents of mu^j q_j, then shifted back by mu^-j.
        std::map<VarId, int> exps;
        std::size_t rest = flat;
        int used = 0;
        for (std::size_t k = 0; k < nfree; ++k) {
          int e = static_cast<int>(rest % width[k]);
          rest /= width[k];
          used += e;
          exps[free[k]] = e;
        }
        if (homogeneous) {
          int e = j * (common + mu_degree) - used;
          if (e < 0) valid = false;
          exps[avars[0]] = e;
        }
        std::vector<Monomial::Factor> f;
        for (auto [v, e] : exps) {
          auto it = range.find(v);
          if (it != range.end()) e += j * it->second.first;
          if (e != 0) f.emplace_back(v, e);
        }
        out.push_back({Monomial::from_factors(std::move(f)), *c});
      }
      if (valid) q[j] = LaurentPoly::from_terms(std::move(out));
    }
    if (!valid) continue;
    if (auto r = accept(std::move(q))) return r;
  }
  return std::nullopt;
}

}  // namespace

LaurentPoly bareiss_determinant(std::vector<std::vector<LaurentPoly>> m) {
  std::size_t n = m.size();
  if (n == 0) return LaurentPoly(1);
  LaurentPoly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return LaurentPoly{};
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw ConsistencyError("fraction-free elimination produced an inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = LaurentPoly{};
    }
    prev = m[k][k];
  }
  LaurentPoly d = m[n - 1][n - 1];
  return negate ? -d : d;
}

std::vector<LaurentPoly> transfer_denominator(const TransferSystem& ts) {
  auto a = ts.dense();
  LaurentPoly x = LaurentPoly::var(kX);
  for (std::size_t i = 0; i < ts.dim; ++i) {
    for (std::size_t j = 0; j < ts.dim; ++j) a[i][j] = (i == j ? LaurentPoly(1) : LaurentPoly()) - x * a[i][j];
  }
  LaurentPoly det = bareiss_determinant(std::move(a));
  std::vector<LaurentPoly> out;
  for (auto& [e, c] : det.collect(kX)) {
    if (static_cast<int>(out.size()) <= e) out.resize(e + 1);
    out[e] = c;
  }
  return out;
}

RationalGF extract_rational(const TransferSeries& ts) {
  // Degree probe: minimal recurrence at random points modulo a prime.
  int bound = static_cast<int>(ts.prefix.size()) + 1;
  int extra = 0;
  for (const auto& c : ts.components) {
    bound += static_cast<int>(c.system.dim);
    extra = std::max(extra, c.shift + c.min_steps + 1);
  }
  bound += extra;
  int probe_terms = 2 * bound + 8;

  auto vars = series_variables(ts);
  std::size_t nvars = VarRegistry::global().size();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_int_distribution<std::uint64_t> pick(2, kPrime - 2);
  int dq = 0, dp = -1;
  for (int trial = 0; trial < 3; ++trial) {
    ModProbe probe{std::vector<std::uint64_t>(nvars, 1)};
    for (VarId v : vars) probe.values[v] = pick(rng);
    auto s = expand_mod(ts, probe_terms - 1, probe);
    auto [c, L] = berlekamp_massey(s);
    int q_deg = trimmed_degree(c);
    std::vector<std::uint64_t> p(static_cast<std::size_t>(L), 0);
    for (int k = 0; k < L; ++k) {
      for (int j = 0; j <= std::min(k, q_deg); ++j) p[k] = (p[k] + mulmod(c[j], s[k - j], kPrime)) % kPrime;
    }
    dq = std::max(dq, q_deg);
    dp = std::max(dp, trimmed_degree(p));
  }

  int exact_terms = 2 * std::max(dq, dp + 1) + 8;
  auto s = ts.expand(exact_terms - 1);
  auto term = [&s](int k) { return k < 0 ? LaurentPoly{} : s[k]; };

  // Numerator from a denominator; nullopt unless the pair reproduces the
  // expansion through x^(exact_terms - 1).
  auto assemble = [&](std::vector<LaurentPoly> q) -> std::optional<RationalGF> {
    std::vector<LaurentPoly> p(static_cast<std::size_t>(std::max(dp, 0)) + 1);
    for (int k = 0; k <= dp; ++k) {
      for (int j = 0; j <= std::min(k, dq); ++j) p[k] += q[j] * term(k - j);
    }
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    while (q.size() > 1 && q.back().is_zero()) q.pop_back();
    RationalGF r{kX, p, q};
    auto check = expand_rational(r, exact_terms - 1);
    for (int k = 0; k < exact_terms; ++k) {
      if (!(check[k] == s[k])) return std::nullopt;
    }
    return r;
  };

  std::optional<RationalGF> found;
  if (dq == 0) {
    found = assemble({LaurentPoly(1)});
  } else {
    found = interpolate_denominator(ts, dq, exact_terms, assemble);
  }
  if (!found) {
    // Fallback: Cramer's rule on dq independent rows k > dp of
    // sum_{j=1..dq} q_j s_{k-j} = -s_k.
    std::vector<LaurentPoly> q(static_cast<std::size_t>(dq) + 1);
    q[0] = LaurentPoly(1);
    ModProbe probe{std::vector<std::uint64_t>(nvars, 1)};
    for (VarId v : vars) probe.values[v] = pick(rng);
    std::vector<int> rows;
    std::vector<std::vector<std::uint64_t>> chosen;
    for (int k = dp + 1; k < exact_terms && static_cast<int>(rows.size()) < dq; ++k) {
      std::vector<std::uint64_t> row(dq);
      for (int j = 1; j <= dq; ++j) row[j - 1] = term(k - j).eval_mod(probe.values, kPrime);
      auto trial = chosen;
      trial.push_back(row);
      if (rank_mod(trial, dq) == trial.size()) {
        chosen = std::move(trial);
        rows.push_back(k);
      }
    }
    if (static_cast<int>(rows.size()) < dq || det_mod(chosen) == 0) {
      throw ConsistencyError("could not find an independent system for the denominator");
    }
    std::vector<std::vector<LaurentPoly>> m(dq, std::vector<LaurentPoly>(dq));
    std::vector<LaurentPoly> rhs(dq);
    for (int i = 0; i < dq; ++i) {
      for (int j = 1; j <= dq; ++j) m[i][j - 1] = term(rows[i] - j);
      rhs[i] = -term(rows[i]);
    }
    LaurentPoly det = bareiss_determinant(m);
    if (det.is_zero()) throw ConsistencyError("denominator system is singular");
    for (int j = 0; j < dq; ++j) {
      auto mj = m;
      for (int i = 0; i < dq; ++i) mj[i][j] = rhs[i];
      auto qj = divide_exact(bareiss_determinant(std::move(mj)), det);
      if (!qj) throw ConsistencyError("denominator coefficient is not a Laurent polynomial");
      q[j + 1] = std::move(*qj);
    }
    found = assemble(std::move(q));
    if (!found) throw ConsistencyError("rational function disagrees with the expansion");
  }
  RationalGF r = std::move(*found);

  // Clear negative exponents with one monomial factor.
  std::map<VarId, int> low;
  for (const auto* side : {&r.numerator, &r.denominator}) {
    for (const auto& c : *side) {
      for (const auto& t : c.terms()) {
        for (const auto& [v, e] : t.mono.factors()) low[v] = std::min(low[v], e);
      }
    }
  }
  std::vector<Monomial::Factor> lift;
  for (const auto& [v, e] : low) {
    if (e < 0) lift.emplace_back(v, -e);
  }
  if (!lift.empty()) {
    Monomial m = Monomial::from_factors(lift);
    for (auto& c : r.numerator) c = c.times(m);
    for (auto& c : r.denominator) c = c.times(m);
  }
  return r;
}

}  // namespace bwgf
