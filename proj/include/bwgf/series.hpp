#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bwgf/poly.hpp"

namespace bwgf {

// Univariate power series in `var`, truncated after x^order (inclusive).
// Coefficients are Laurent polynomials that never mention `var`.
class TruncatedSeries {
 public:
  TruncatedSeries(VarId var, int order);
  TruncatedSeries(VarId var, std::vector<LaurentPoly> coeffs);

  // The series `var` itself (0 + 1*var).
  static TruncatedSeries identity(VarId var, int order);
  static TruncatedSeries constant(VarId var, int order, const LaurentPoly& c);
  // Expand a polynomial in `var` (any other variables become coefficients).
  static TruncatedSeries from_poly(VarId var, int order, const LaurentPoly& p);

  VarId var() const { return var_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const LaurentPoly& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
  LaurentPoly& coeff(int n) { return coeffs_.at(static_cast<std::size_t>(n)); }
  std::span<const LaurentPoly> coeffs() const { return coeffs_; }

  TruncatedSeries truncated(int order) const;
  // Apply f to every coefficient.
  TruncatedSeries map(const std::function<LaurentPoly(const LaurentPoly&)>& f) const;
  // Scale the argument: f(x) -> f(c*x).
  TruncatedSeries rescaled(const Rational& c) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const LaurentPoly& c);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const LaurentPoly& c) { return a *= c; }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  // "[n] <poly>" per line.
  std::string to_string() const;

 private:
  void check_arity() const;

  VarId var_;
  std::vector<LaurentPoly> coeffs_;
};

// Cauchy product truncated at the smaller order.
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_pow(const TruncatedSeries& f, unsigned k);
// 1/f; the constant term must be a unit.
TruncatedSeries series_reciprocal(const TruncatedSeries& f);
// Requires f[0] == 0.
TruncatedSeries series_exp(const TruncatedSeries& f);
// Requires f[0] == 1.
TruncatedSeries series_log(const TruncatedSeries& f);
// (exp(f) + exp(-f))/2 and (exp(f) - exp(-f))/2; requires f[0] == 0.
TruncatedSeries series_cosh(const TruncatedSeries& f);
TruncatedSeries series_sinh(const TruncatedSeries& f);
// outer(inner(x)); requires inner[0] == 0. Result order is the smaller one.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);
// c_n -> c_n / n, constant term dropped; requires f[0] == 0.
TruncatedSeries integrate_xinv(const TruncatedSeries& f);
// c_n -> c_n * weight(n); weight(0) is only consulted when c_0 != 0.
TruncatedSeries hadamard_scale(const TruncatedSeries& f, const std::function<Rational(int)>& weight);

// Homogeneous components in the variables b, w_minus, w_plus, keyed by
// total degree and truncated after degree `max_degree`.
class GradedMultiSeries {
 public:
  explicit GradedMultiSeries(int max_degree) : max_degree_(max_degree) {}

  int max_degree() const { return max_degree_; }
  // Adds p (which must be homogeneous of degree d, d <= max_degree).
  void add(int d, const LaurentPoly& p);
  const LaurentPoly& component(int d) const;
  const std::map<int, LaurentPoly>& components() const { return components_; }
  bool is_graded() const;

  // x <- 1 applied to a series whose n-th coefficient is homogeneous of
  // degree n.
  static GradedMultiSeries from_series(const TruncatedSeries& s);

 private:
  int max_degree_;
  std::map<int, LaurentPoly> components_;
};

// Sum_d Z_d(b <- Tb, w_minus <- t^-1 Tplus + t Tminus, w_plus <- Tplus + Tminus)
// truncated at x^order.
TruncatedSeries graded_substitute(const GradedMultiSeries& z, const TruncatedSeries& tb,
                                  const TruncatedSeries& tplus, const TruncatedSeries& tminus, int order);

// numerator/denominator, both polynomials in `var` given by coefficient lists.
struct RationalGF {
  VarId var = kX;
  std::vector<LaurentPoly> numerator;
  std::vector<LaurentPoly> denominator;

  int numerator_degree() const { return static_cast<int>(numerator.size()) - 1; }
  int denominator_degree() const { return static_cast<int>(denominator.size()) - 1; }
  bool is_integral() const;
  // "N(x) = ...\nD(x) = ...\n"
  std::string to_string() const;
  friend bool operator==(const RationalGF&, const RationalGF&) = default;
};

// Render sum_k c_k var^k with ascending powers, e.g. "1 + (2 - 2*t)*x^2".
std::string format_univariate(VarId var, std::span<const LaurentPoly> coeffs);

// Power-series expansion of r through var^order.
TruncatedSeries expand_rational(const RationalGF& r, int order);

}  // namespace bwgf
