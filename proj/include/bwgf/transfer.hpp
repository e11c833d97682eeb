#pragma once

#include <cstdint>
#include <vector>

#include "bwgf/series.hpp"

namespace bwgf {

// Sparse weighted adjacency matrix with v_{N+1} = A v_N.
struct TransferSystem {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    LaurentPoly weight;
  };

  std::size_t dim = 0;
  std::vector<Entry> entries;
  std::vector<LaurentPoly> v0;
  // Indices summed by the output functional; empty means all states.
  std::vector<std::uint32_t> output;

  std::vector<LaurentPoly> apply(const std::vector<LaurentPoly>& v) const;
  LaurentPoly output_sum(const std::vector<LaurentPoly>& v) const;
  // Dense view, row-major, for small systems.
  std::vector<std::vector<LaurentPoly>> dense() const;
};

// x^shift * sum_{N >= min_steps} output(A^N v0) x^N.
struct TransferComponent {
  TransferSystem system;
  int min_steps = 0;
  int shift = 0;
};

// A generating function in x: an explicit polynomial prefix plus transfer
// components.
struct TransferSeries {
  std::vector<LaurentPoly> prefix;
  std::vector<TransferComponent> components;

  // Coefficients of x^0..x^order.
  std::vector<LaurentPoly> expand(int order) const;
  std::size_t state_count() const;
};

// Reduced numerator/denominator with the denominator's constant term a
// monomial and no negative exponents anywhere. Throws ConsistencyError when
// the recovered function does not reproduce the expansion.
RationalGF extract_rational(const TransferSeries& ts);

// det(I - x A) by fraction-free elimination; for small systems.
std::vector<LaurentPoly> transfer_denominator(const TransferSystem& ts);

// Fraction-free determinant over the Laurent ring.
LaurentPoly bareiss_determinant(std::vector<std::vector<LaurentPoly>> m);

}  // namespace bwgf
