#pragma once

#include <vector>

#include "bwgf/graph.hpp"
#include "bwgf/series.hpp"

namespace bwgf {

inline constexpr int kMaxFeynmanHalfEdges = 16;

// Allowed vertex degrees and the half-edge truncation U (the power of u).
struct DegreeFilter {
  std::vector<int> degrees;
  int max_half_edges = 12;

  static DegreeFilter of(std::vector<int> degrees, int max_half_edges);
  static DegreeFilter up_to(int max_degree, int max_half_edges);
  // Throws DomainError or BoundError.
  void validate() const;
  bool allows(int k) const;
};

// Number of perfect matchings of a k-set.
Integer wick(int k);

// Formal measure on a monomial in b, w, y, z.
Integer moment_bw(const Monomial& m);
// Linear extension: b, w, y, z are integrated out, other variables kept.
LaurentPoly bw_expectation(const LaurentPoly& p);

// (b + y)^n + sum_i C(n, i) p(i) w^(n-i) z^i with p(i) = t for even i, 1 for odd i.
LaurentPoly flower_poly(int n);

// Every profile whose degrees pass the filter and whose half-edge total lies in [1, U].
std::vector<Profile> filtered_profiles(const DegreeFilter& filter);

// prod_k xi_k^(n_k).
Monomial xi_monomial(const Profile& p);

// Series in u; coefficients are polynomials in the xi_k (and t for the bw variants).
TruncatedSeries gaussian_graph_series(const DegreeFilter& filter);
TruncatedSeries connected_gaussian_series(const DegreeFilter& filter);
TruncatedSeries bw_graph_series(const DegreeFilter& filter);
TruncatedSeries connected_bw_series(const DegreeFilter& filter);

// Coefficient of u^|n| prod xi_k^(n_k).
LaurentPoly profile_coefficient(const TruncatedSeries& s, const Profile& p);

// Sum of W_G / |Aut G| over graphs with the profile, by enumeration.
LaurentPoly enumerated_w_sum(const Profile& p, bool connected);

}  // namespace bwgf
