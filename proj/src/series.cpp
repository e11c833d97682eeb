#include "bwgf/series.hpp"

#include <algorithm>
#include <sstream>

#include "bwgf/error.hpp"

namespace bwgf {

TruncatedSeries::TruncatedSeries(VarId var, int order) : var_(var) {
  if (order < 0) throw DomainError("series order must be nonnegative");
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

TruncatedSeries::TruncatedSeries(VarId var, std::vector<LaurentPoly> coeffs) : var_(var), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("series needs at least one coefficient");
  check_arity();
}

void TruncatedSeries::check_arity() const {
  for (const auto& c : coeffs_) {
    for (const auto& t : c.terms()) {
      if (t.mono.exponent(var_) != 0) {
        throw DomainError("series coefficient mentions the series variable " + VarRegistry::global().name(var_));
      }
    }
  }
}

TruncatedSeries TruncatedSeries::identity(VarId var, int order) {
  TruncatedSeries s(var, order);
  if (order >= 1) s.coeff(1) = LaurentPoly(1);
  return s;
}

TruncatedSeries TruncatedSeries::constant(VarId var, int order, const LaurentPoly& c) {
  TruncatedSeries s(var, order);
  s.coeff(0) = c;
  s.check_arity();
  return s;
}

TruncatedSeries TruncatedSeries::from_poly(VarId var, int order, const LaurentPoly& p) {
  TruncatedSeries s(var, order);
  for (auto& [e, c] : p.collect(var)) {
    if (e < 0) throw DomainError("from_poly: negative power of the series variable");
    if (e <= order) s.coeff(e) = c;
  }
  return s;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  if (order > this->order()) throw DomainError("cannot extend a truncated series");
  return TruncatedSeries(var_, std::vector<LaurentPoly>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries TruncatedSeries::map(const std::function<LaurentPoly(const LaurentPoly&)>& f) const {
  std::vector<LaurentPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(f(c));
  return TruncatedSeries(var_, std::move(out));
}

TruncatedSeries TruncatedSeries::rescaled(const Rational& c) const {
  TruncatedSeries r = *this;
  Rational p = 1;
  for (auto& co : r.coeffs_) {
    co *= p;
    p *= c;
  }
  return r;
}

namespace {

void require_same_var(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.var() != b.var()) throw DomainError("series variable mismatch");
}

}  // namespace

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_var(*this, o);
  int n = std::min(order(), o.order());
  coeffs_.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) coeffs_[i] += o[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_var(*this, o);
  int n = std::min(order(), o.order());
  coeffs_.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) coeffs_[i] -= o[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const LaurentPoly& c) {
  for (auto& co : coeffs_) co *= c;
  check_arity();
  return *this;
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  for (int n = 0; n <= order(); ++n) os << '[' << n << "] " << coeffs_[n].to_string() << '\n';
  return os.str();
}

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_var(f, g);
  int n = std::min(f.order(), g.order());
  TruncatedSeries r(f.var(), n);
  for (int i = 0; i <= n; ++i) {
    if (f[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (g[j].is_zero()) continue;
      r.coeff(i + j) += f[i] * g[j];
    }
  }
  return r;
}

TruncatedSeries series_pow(const TruncatedSeries& f, unsigned k) {
  TruncatedSeries result = TruncatedSeries::constant(f.var(), f.order(), LaurentPoly(1));
  TruncatedSeries base = f;
  while (k > 0) {
    if (k & 1U) result = series_mul(result, base);
    k >>= 1U;
    if (k > 0) base = series_mul(base, base);
  }
  return result;
}

TruncatedSeries series_reciprocal(const TruncatedSeries& f) {
  if (!f[0].is_unit()) throw DomainError("series_reciprocal: constant term is not invertible");
  LaurentPoly inv0 = f[0].unit_inverse();
  TruncatedSeries r(f.var(), f.order());
  r.coeff(0) = inv0;
  for (int n = 1; n <= f.order(); ++n) {
    LaurentPoly acc;
    for (int k = 1; k <= n; ++k) {
      if (!f[k].is_zero() && !r[n - k].is_zero()) acc += f[k] * r[n - k];
    }
    r.coeff(n) = -(acc * inv0);
  }
  return r;
}

TruncatedSeries series_exp(const TruncatedSeries& f) {
  if (!f[0].is_zero()) throw DomainError("series_exp: constant term must be zero");
  TruncatedSeries g(f.var(), f.order());
  g.coeff(0) = LaurentPoly(1);
  for (int n = 1; n <= f.order(); ++n) {
    LaurentPoly acc;
    for (int k = 1; k <= n; ++k) {
      if (f[k].is_zero() || g[n - k].is_zero()) continue;
      acc += f[k] * g[n - k] * Rational(k);
    }
    g.coeff(n) = acc / Rational(n);
  }
  return g;
}

TruncatedSeries series_log(const TruncatedSeries& f) {
  if (!(f[0] == LaurentPoly(1))) throw DomainError("series_log: constant term must be one");
  TruncatedSeries h(f.var(), f.order());
  for (int n = 1; n <= f.order(); ++n) {
    LaurentPoly acc = f[n] * Rational(n);
    for (int k = 1; k < n; ++k) {
      if (h[k].is_zero() || f[n - k].is_zero()) continue;
      acc -= h[k] * f[n - k] * Rational(k);
    }
    h.coeff(n) = acc / Rational(n);
  }
  return h;
}

TruncatedSeries series_cosh(const TruncatedSeries& f) {
  TruncatedSeries ep = series_exp(f);
  TruncatedSeries em = series_exp(f * LaurentPoly(-1));
  return (ep + em) * LaurentPoly(Rational(1, 2));
}

TruncatedSeries series_sinh(const TruncatedSeries& f) {
  TruncatedSeries ep = series_exp(f);
  TruncatedSeries em = series_exp(f * LaurentPoly(-1));
  return (ep - em) * LaurentPoly(Rational(1, 2));
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  require_same_var(outer, inner);
  if (!inner[0].is_zero()) throw DomainError("compose: inner series must have zero constant term");
  int n = std::min(outer.order(), inner.order());
  TruncatedSeries in = inner.truncated(n);
  TruncatedSeries acc = TruncatedSeries::constant(outer.var(), n, outer[n]);
  for (int k = n - 1; k >= 0; --k) {
    acc = series_mul(acc, in);
    acc.coeff(0) += outer[k];
  }
  return acc;
}

TruncatedSeries integrate_xinv(const TruncatedSeries& f) {
  if (!f[0].is_zero()) throw DomainError("integrate_xinv: constant term must be zero");
  TruncatedSeries r(f.var(), f.order());
  for (int n = 1; n <= f.order(); ++n) r.coeff(n) = f[n] / Rational(n);
  return r;
}

TruncatedSeries hadamard_scale(const TruncatedSeries& f, const std::function<Rational(int)>& weight) {
  TruncatedSeries r(f.var(), f.order());
  for (int n = 0; n <= f.order(); ++n) {
    if (n == 0 && f[0].is_zero()) continue;
    r.coeff(n) = f[n] * weight(n);
  }
  return r;
}

// ---------------------------------------------------------------------------
// GradedMultiSeries

void GradedMultiSeries::add(int d, const LaurentPoly& p) {
  static constexpr VarId allowed[] = {kB, kWMinus, kWPlus};
  if (d < 0 || d > max_degree_) throw DomainError("graded component degree out of range");
  if (!p.only_uses(allowed) || !p.is_homogeneous(d)) {
    throw DomainError("graded component of degree " + std::to_string(d) +
                      " is not homogeneous in b, w_minus, w_plus: " + p.to_string());
  }
  components_[d] += p;
  if (components_[d].is_zero()) components_.erase(d);
}

const LaurentPoly& GradedMultiSeries::component(int d) const {
  static const LaurentPoly zero;
  auto it = components_.find(d);
  return it == components_.end() ? zero : it->second;
}

bool GradedMultiSeries::is_graded() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& kv) { return kv.second.is_homogeneous(kv.first); });
}

GradedMultiSeries GradedMultiSeries::from_series(const TruncatedSeries& s) {
  GradedMultiSeries z(s.order());
  for (int n = 0; n <= s.order(); ++n) {
    if (!s[n].is_zero()) z.add(n, s[n]);
  }
  return z;
}

TruncatedSeries graded_substitute(const GradedMultiSeries& z, const TruncatedSeries& tb,
                                  const TruncatedSeries& tplus, const TruncatedSeries& tminus, int order) {
  if (z.max_degree() < order) {
    throw DomainError("graded_substitute: Z truncated at degree " + std::to_string(z.max_degree()) +
                      " cannot produce order " + std::to_string(order));
  }
  for (const auto* s : {&tb, &tplus, &tminus}) {
    if (s->order() < order) throw DomainError("graded_substitute: tree series truncated too early");
    if (!(*s)[0].is_zero()) throw DomainError("graded_substitute: tree series must have zero constant term");
  }
  VarId var = tb.var();
  TruncatedSeries sb = tb.truncated(order);
  TruncatedSeries splus = tplus.truncated(order) + tminus.truncated(order);
  TruncatedSeries sminus =
      tplus.truncated(order) * LaurentPoly::var(kT, -1) + tminus.truncated(order) * LaurentPoly::var(kT, 1);

  auto powers = [order](const TruncatedSeries& s) {
    std::vector<TruncatedSeries> p;
    p.push_back(TruncatedSeries::constant(s.var(), order, LaurentPoly(1)));
    for (int k = 1; k <= order; ++k) p.push_back(series_mul(p.back(), s));
    return p;
  };
  auto pb = powers(sb);
  auto pp = powers(splus);
  auto pm = powers(sminus);

  TruncatedSeries out(var, order);
  for (const auto& [d, comp] : z.components()) {
    if (d > order) break;
    for (const auto& term : comp.terms()) {
      int i = term.mono.exponent(kB);
      int j = term.mono.exponent(kWMinus);
      int k = term.mono.exponent(kWPlus);
      TruncatedSeries prod = series_mul(series_mul(pb[i], pm[j]), pp[k]);
      out += prod * LaurentPoly(term.coeff);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RationalGF

bool RationalGF::is_integral() const {
  for (const auto* side : {&numerator, &denominator}) {
    for (const auto& c : *side) {
      for (const auto& t : c.terms()) {
        if (t.coeff.get_den() != 1 || t.mono.has_negative()) return false;
      }
    }
  }
  return true;
}

std::string format_univariate(VarId var, std::span<const LaurentPoly> coeffs) {
  std::string vname = VarRegistry::global().name(var);
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const LaurentPoly& c = coeffs[k];
    if (c.is_zero()) continue;
    std::string power = k == 0 ? "" : (k == 1 ? vname : vname + "^" + std::to_string(k));
    std::string body;
    bool neg = false;
    if (k == 0) {
      body = c.to_string();
      if (body[0] == '-') {
        neg = true;
        body = body.substr(1);
        if (c.size() > 1) {
          body = (-c).to_string();
        }
      }
    } else if (c.size() == 1 && c.terms()[0].mono.is_one()) {
      Rational q = c.terms()[0].coeff;
      neg = q < 0;
      q = abs(q);
      if (q == 1) {
        body = power;
      } else if (q.get_den() == 1) {
        body = q.get_str() + "*" + power;
      } else {
        body = "(" + q.get_str() + ")*" + power;
      }
    } else if (c.size() == 1) {
      LaurentPoly lead = c.terms()[0].coeff < 0 ? -c : c;
      neg = c.terms()[0].coeff < 0;
      body = lead.to_string() + "*" + power;
    } else {
      body = "(" + c.to_string() + ")*" + power;
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + body;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

std::string RationalGF::to_string() const {
  std::string v = VarRegistry::global().name(var);
  return "N(" + v + ") = " + format_univariate(var, numerator) + "\nD(" + v + ") = " +
         format_univariate(var, denominator) + "\n";
}

TruncatedSeries expand_rational(const RationalGF& r, int order) {
  if (r.denominator.empty() || !r.denominator[0].is_unit()) {
    throw DomainError("expand_rational: denominator constant term is not invertible");
  }
  LaurentPoly inv0 = r.denominator[0].unit_inverse();
  TruncatedSeries s(r.var, order);
  int dq = r.denominator_degree();
  for (int n = 0; n <= order; ++n) {
    LaurentPoly acc = n < static_cast<int>(r.numerator.size()) ? r.numerator[n] : LaurentPoly{};
    for (int j = 1; j <= std::min(n, dq); ++j) {
      if (r.denominator[j].is_zero() || s[n - j].is_zero()) continue;
      acc -= r.denominator[j] * s[n - j];
    }
    s.coeff(n) = inv0.is_constant() && inv0 == LaurentPoly(1) ? std::move(acc) : acc * inv0;
  }
  return s;
}

}  // namespace bwgf
