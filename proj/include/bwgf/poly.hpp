#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bwgf {

using Integer = mpz_class;
using Rational = mpq_class;

using VarId = std::uint32_t;

// Fixed variables, registered in this order before anything else. Printing
// order follows registration order.
inline constexpr VarId kT = 0;
inline constexpr VarId kB = 1;
inline constexpr VarId kWPlus = 2;
inline constexpr VarId kWMinus = 3;
inline constexpr VarId kY = 4;
inline constexpr VarId kZ = 5;
inline constexpr VarId kX = 6;
inline constexpr VarId kU = 7;
inline constexpr VarId kW = 8;

// Process-wide, append-only table of variable names. Registration is
// serialized; lookups take a shared lock.
class VarRegistry {
 public:
  static VarRegistry& global();

  VarId intern(std::string_view name);
  std::optional<VarId> find(std::string_view name) const;
  std::string name(VarId id) const;
  std::size_t size() const;

  // xi_k marks vertices of degree k in the all-graphs series.
  VarId xi(int k);
  // Inverse of xi(); nullopt when `id` is not an xi variable.
  std::optional<int> xi_index(VarId id) const;

 private:
  VarRegistry();

  mutable std::shared_mutex mutex_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
};

// Laurent monomial: sparse var -> nonzero integer exponent, sorted by var.
class Monomial {
 public:
  using Factor = std::pair<VarId, int>;

  Monomial() = default;
  static Monomial var(VarId v, int exp = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  int exponent(VarId v) const;
  int degree() const;
  bool is_one() const { return factors_.empty(); }
  bool has_negative() const;
  std::span<const Factor> factors() const { return factors_; }

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  // this / o, i.e. this * o^-1.
  Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }
  Monomial pow(int k) const;
  // Drop variable v (its exponent) from the monomial.
  Monomial without(VarId v) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// True when a precedes b in the canonical (descending graded-lex) order.
bool term_order_before(const Monomial& a, const Monomial& b);

// Componentwise minimum of exponents; used to clear negative powers.
Monomial gcd_monomial(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse Laurent polynomial with rational coefficients, kept canonical: terms
// sorted by term_order_before, no zero coefficients, no repeated monomials.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Monomial& m, const Rational& c = 1);

  static LaurentPoly var(VarId v, int exp = 1) { return {Monomial::var(v, exp)}; }
  // Build from arbitrary (possibly repeated, possibly zero) terms.
  static LaurentPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Single term c*m with c != 0: invertible in the Laurent ring.
  bool is_unit() const { return terms_.size() == 1; }
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // Highest/lowest exponent of v among the terms (0 for the zero polynomial).
  int max_degree(VarId v) const;
  int min_degree(VarId v) const;
  std::vector<VarId> variables() const;
  bool only_uses(std::span<const VarId> allowed) const;
  // Total degree is d for every term.
  bool is_homogeneous(int d) const;
  // GCD of all monomials (componentwise minimum exponents).
  Monomial monomial_content() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  LaurentPoly& operator/=(const Rational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator/(LaurentPoly a, const Rational& c) { return a /= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly times(const Monomial& m) const;
  LaurentPoly pow(unsigned k) const;
  // Inverse of a unit; throws DomainError otherwise.
  LaurentPoly unit_inverse() const;

  // Group terms by the exponent of v; v itself is removed from the keys'
  // coefficients.
  std::map<int, LaurentPoly> collect(VarId v) const;

  // Evaluate the variables in `values` to rationals; others stay symbolic.
  LaurentPoly evaluate(const std::map<VarId, Rational>& values) const;
  // Evaluate every variable modulo the prime p (values indexed by VarId).
  std::uint64_t eval_mod(std::span<const std::uint64_t> values, std::uint64_t p) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

using Bindings = std::map<VarId, LaurentPoly>;

// Ring homomorphism replacing each bound variable. A variable occurring with
// a negative exponent must be bound to a unit (or left unbound).
LaurentPoly substitute(const LaurentPoly& p, const Bindings& bindings);

// b <- 1, w_minus <- 1, w_plus <- t. Throws DomainError on other variables.
LaurentPoly specialize_full(const LaurentPoly& p);

// q with num == q*den in the Laurent ring, or nullopt if den does not divide.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den);

// Parse the canonical text form, e.g. "t^3 + 3*t + 4" or "(1/8)*t + 1/8".
LaurentPoly parse_poly(std::string_view text);

// Modular arithmetic helpers shared by the modular rank probes.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
std::uint64_t rational_mod(const Rational& q, std::uint64_t p);

}  // namespace bwgf
