#include "bwgf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bwgf/error.hpp"

namespace bwgf {

// ---------------------------------------------------------------------------
// VarRegistry

VarRegistry::VarRegistry() {
  for (const char* n : {"t", "b", "w_plus", "w_minus", "y", "z", "x", "u", "w"}) {
    index_.emplace(n, static_cast<VarId>(names_.size()));
    names_.emplace_back(n);
  }
}

VarRegistry& VarRegistry::global() {
  static VarRegistry registry;
  return registry;
}

VarId VarRegistry::intern(std::string_view name) {
  {
    std::shared_lock lock(mutex_);
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = index_.emplace(std::string(name), static_cast<VarId>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return it->second;
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string VarRegistry::name(VarId id) const {
  std::shared_lock lock(mutex_);
  if (id >= names_.size()) throw DomainError("unknown variable id " + std::to_string(id));
  return names_[id];
}

std::size_t VarRegistry::size() const {
  std::shared_lock lock(mutex_);
  return names_.size();
}

VarId VarRegistry::xi(int k) {
  if (k < 1) throw DomainError("xi index must be positive");
  return intern("xi_" + std::to_string(k));
}

std::optional<int> VarRegistry::xi_index(VarId id) const {
  std::string n = name(id);
  if (n.rfind("xi_", 0) != 0) return std::nullopt;
  return std::stoi(n.substr(3));
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(VarId v, int exp) {
  Monomial m;
  if (exp != 0) m.factors_.emplace_back(v, exp);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
  }
  std::erase_if(m.factors_, [](const Factor& f) { return f.second == 0; });
  return m;
}

int Monomial::exponent(VarId v) const {
  for (const auto& [var, e] : factors_) {
    if (var == v) return e;
    if (var > v) break;
  }
  return 0;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

bool Monomial::has_negative() const {
  return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second < 0; });
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) r.factors_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& f : r.factors_) f.second = -f.second;
  return r;
}

Monomial Monomial::pow(int k) const {
  if (k == 0) return {};
  Monomial r = *this;
  for (auto& f : r.factors_) f.second *= k;
  return r;
}

Monomial Monomial::without(VarId v) const {
  Monomial r = *this;
  std::erase_if(r.factors_, [v](const Factor& f) { return f.first == v; });
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [v, e] : factors_) {
    h ^= (static_cast<std::size_t>(v) * 0x100000001b3ULL + static_cast<std::size_t>(e + 1024)) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Monomial::to_string() const {
  auto& reg = VarRegistry::global();
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += '*';
    out += reg.name(v);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

bool term_order_before(const Monomial& a, const Monomial& b) {
  int da = a.degree();
  int db = b.degree();
  if (da != db) return da > db;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    VarId va = i < fa.size() ? fa[i].first : ~VarId{0};
    VarId vb = j < fb.size() ? fb[j].first : ~VarId{0};
    VarId v = std::min(va, vb);
    int ea = va == v ? fa[i++].second : 0;
    int eb = vb == v ? fb[j++].second : 0;
    if (ea != eb) return ea > eb;
  }
  return false;
}

Monomial gcd_monomial(const Monomial& a, const Monomial& b) {
  std::vector<Monomial::Factor> out;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    VarId va = i < fa.size() ? fa[i].first : ~VarId{0};
    VarId vb = j < fb.size() ? fb[j].first : ~VarId{0};
    VarId v = std::min(va, vb);
    int ea = va == v ? fa[i++].second : 0;
    int eb = vb == v ? fb[j++].second : 0;
    out.emplace_back(v, std::min(ea, eb));
  }
  return Monomial::from_factors(std::move(out));
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

LaurentPoly::LaurentPoly(const Rational& c) : LaurentPoly(Monomial{}, c) {}

LaurentPoly::LaurentPoly(const Monomial& m, const Rational& c) {
  if (c != 0) {
    terms_.push_back({m, c});
    terms_.back().coeff.canonicalize();
  }
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  LaurentPoly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void LaurentPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return term_order_before(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    t.coeff.canonicalize();
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational LaurentPoly::constant_term() const { return coefficient(Monomial{}); }

Rational LaurentPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
    return term_order_before(t.mono, key);
  });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

int LaurentPoly::max_degree(VarId v) const {
  if (terms_.empty()) return 0;
  int d = terms_[0].mono.exponent(v);
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

int LaurentPoly::min_degree(VarId v) const {
  if (terms_.empty()) return 0;
  int d = terms_[0].mono.exponent(v);
  for (const auto& t : terms_) d = std::min(d, t.mono.exponent(v));
  return d;
}

std::vector<VarId> LaurentPoly::variables() const {
  std::vector<VarId> vs;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) vs.push_back(f.first);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool LaurentPoly::only_uses(std::span<const VarId> allowed) const {
  for (VarId v : variables()) {
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
  }
  return true;
}

bool LaurentPoly::is_homogeneous(int d) const {
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.mono.degree() == d; });
}

Monomial LaurentPoly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_[0].mono;
  for (const auto& t : terms_) g = gcd_monomial(g, t.mono);
  return g;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, std::span<const Term> b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && term_order_before(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || term_order_before(b[j].mono, a[i].mono)) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = negate_b ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator/=(const Rational& c) {
  if (c == 0) throw DomainError("division by zero");
  for (auto& t : terms_) t.coeff /= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1) {
    LaurentPoly r = a.times(b.terms_[0].mono);
    return r *= b.terms_[0].coeff;
  }
  if (a.terms_.size() == 1) {
    LaurentPoly r = b.times(a.terms_[0].mono);
    return r *= a.terms_[0].coeff;
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Rational prod;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      acc[ta.mono * tb.mono] += prod;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, std::move(c)});
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return term_order_before(x.mono, y.mono); });
  LaurentPoly r;
  r.terms_ = std::move(terms);
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::times(const Monomial& m) const {
  // Multiplying by a monomial preserves graded-lex order.
  LaurentPoly r = *this;
  if (m.is_one()) return r;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::unit_inverse() const {
  if (!is_unit()) throw DomainError("polynomial is not invertible: " + to_string());
  return LaurentPoly(terms_[0].mono.inverse(), 1 / terms_[0].coeff);
}

std::map<int, LaurentPoly> LaurentPoly::collect(VarId v) const {
  std::map<int, std::vector<Term>> groups;
  for (const auto& t : terms_) groups[t.mono.exponent(v)].push_back({t.mono.without(v), t.coeff});
  std::map<int, LaurentPoly> out;
  for (auto& [e, ts] : groups) out.emplace(e, from_terms(std::move(ts)));
  return out;
}

LaurentPoly LaurentPoly::evaluate(const std::map<VarId, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    std::vector<Monomial::Factor> rest;
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest.emplace_back(v, e);
        continue;
      }
      if (it->second == 0) {
        if (e < 0) throw DomainError("evaluating a negative power at zero");
        c = 0;
        break;
      }
      Rational p = 1;
      for (int i = 0; i < std::abs(e); ++i) p *= it->second;
      c = e > 0 ? Rational(c * p) : Rational(c / p);
    }
    if (c != 0) out.push_back({Monomial::from_factors(std::move(rest)), std::move(c)});
  }
  return from_terms(std::move(out));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("modular inverse of zero");
  return powmod(a, p - 2, p);
}

std::uint64_t rational_mod(const Rational& q, std::uint64_t p) {
  auto num = static_cast<std::uint64_t>(mpz_fdiv_ui(q.get_num_mpz_t(), p));
  auto den = static_cast<std::uint64_t>(mpz_fdiv_ui(q.get_den_mpz_t(), p));
  return mulmod(num, invmod(den, p), p);
}

std::uint64_t LaurentPoly::eval_mod(std::span<const std::uint64_t> values, std::uint64_t p) const {
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    std::uint64_t c = rational_mod(t.coeff, p);
    for (const auto& [v, e] : t.mono.factors()) {
      if (v >= values.size()) throw DomainError("eval_mod: no value for variable " + VarRegistry::global().name(v));
      std::uint64_t base = e < 0 ? invmod(values[v], p) : values[v];
      c = mulmod(c, powmod(base, static_cast<std::uint64_t>(std::abs(e)), p), p);
    }
    acc = (acc + c) % p;
  }
  return acc;
}

namespace {

std::string rational_text(const Rational& c) { return c.get_str(); }

}  // namespace

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational mag = abs(t.coeff);
    bool neg = t.coeff < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    bool integral = mag.get_den() == 1;
    if (t.mono.is_one()) {
      out += rational_text(mag);
    } else if (mag == 1) {
      out += t.mono.to_string();
    } else if (integral) {
      out += rational_text(mag) + "*" + t.mono.to_string();
    } else {
      out += "(" + rational_text(mag) + ")*" + t.mono.to_string();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// substitute / specialize / divide

LaurentPoly substitute(const LaurentPoly& p, const Bindings& bindings) {
  if (bindings.empty()) return p;
  // Cache of powers per bound variable.
  std::map<std::pair<VarId, int>, LaurentPoly> cache;
  auto power = [&](VarId v, int e) -> const LaurentPoly& {
    auto key = std::make_pair(v, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const LaurentPoly& base = bindings.at(v);
    LaurentPoly val;
    if (e >= 0) {
      val = base.pow(static_cast<unsigned>(e));
    } else {
      if (!base.is_unit()) {
        throw DomainError("variable " + VarRegistry::global().name(v) +
                          " occurs with a negative exponent and is bound to a non-invertible polynomial");
      }
      val = base.unit_inverse().pow(static_cast<unsigned>(-e));
    }
    return cache.emplace(key, std::move(val)).first->second;
  };
  LaurentPoly out;
  std::vector<Term> free_terms;
  for (const auto& t : p.terms()) {
    LaurentPoly term(Monomial{}, t.coeff);
    std::vector<Monomial::Factor> unbound;
    for (const auto& [v, e] : t.mono.factors()) {
      if (bindings.count(v) != 0) {
        term = term * power(v, e);
      } else {
        unbound.emplace_back(v, e);
      }
    }
    out += term.times(Monomial::from_factors(std::move(unbound)));
  }
  return out;
}

LaurentPoly specialize_full(const LaurentPoly& p) {
  static constexpr VarId allowed[] = {kB, kWMinus, kWPlus};
  if (!p.only_uses(allowed)) {
    throw DomainError("specialize_full: polynomial uses variables other than b, w_minus, w_plus: " + p.to_string());
  }
  return substitute(p, {{kB, LaurentPoly(1)}, {kWMinus, LaurentPoly(1)}, {kWPlus, LaurentPoly::var(kT)}});
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  if (num.is_zero()) return LaurentPoly{};
  if (den.is_unit()) return num * den.unit_inverse();
  // Shift both into the polynomial ring; the divisor then has no monomial
  // factor, so a Laurent quotient is automatically a polynomial.
  Monomial dshift = den.monomial_content();
  Monomial nshift = num.monomial_content();
  LaurentPoly d = den.times(dshift.inverse());
  LaurentPoly r = num.times(nshift.inverse());
  std::vector<Term> quotient;
  const Term& lead = d.terms()[0];
  std::size_t guard = 0;
  while (!r.is_zero()) {
    const Term& rl = r.terms()[0];
    Monomial q = rl.mono / lead.mono;
    if (q.has_negative()) return std::nullopt;
    Rational c = rl.coeff / lead.coeff;
    quotient.push_back({q, c});
    r -= d.times(q) * c;
    if (++guard > 1000000) throw ConsistencyError("divide_exact did not terminate");
  }
  LaurentPoly qpoly = LaurentPoly::from_terms(std::move(quotient));
  return qpoly.times(nshift / dshift);
}

// ---------------------------------------------------------------------------
// parser

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  LaurentPoly parse() {
    LaurentPoly acc;
    skip();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    acc += signed_term(neg);
    for (;;) {
      skip();
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        acc += signed_term(c == '-');
      } else {
        break;
      }
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what + " in \"" +
                     std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational number() {
    Integer n(digits());
    skip();
    if (peek() == '/') {
      ++pos_;
      Integer d(digits());
      if (d == 0) fail("zero denominator");
      Rational q(n, d);
      q.canonicalize();
      return q;
    }
    return Rational(n);
  }

  Rational coefficient() {
    skip();
    if (peek() == '(') {
      ++pos_;
      skip();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      Rational q = number();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return neg ? Rational(-q) : q;
    }
    return number();
  }

  Monomial factor() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected variable name");
    std::string name(s_.substr(start, pos_ - start));
    if (std::isdigit(static_cast<unsigned char>(name[0]))) fail("variable names cannot start with a digit");
    VarId v = VarRegistry::global().intern(name);
    skip();
    int e = 1;
    if (peek() == '^') {
      ++pos_;
      skip();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      e = std::stoi(digits());
      if (neg) e = -e;
    }
    return Monomial::var(v, e);
  }

  LaurentPoly signed_term(bool neg) {
    skip();
    Rational c = 1;
    Monomial m;
    char ch = peek();
    bool have_coeff = false;
    if (ch == '(' || std::isdigit(static_cast<unsigned char>(ch))) {
      c = coefficient();
      have_coeff = true;
      skip();
      if (peek() != '*') return LaurentPoly(neg ? Rational(-c) : c);
      ++pos_;
    }
    m = factor();
    for (;;) {
      skip();
      if (peek() != '*') break;
      ++pos_;
      m = m * factor();
    }
    (void)have_coeff;
    return LaurentPoly(m, neg ? Rational(-c) : c);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace bwgf
