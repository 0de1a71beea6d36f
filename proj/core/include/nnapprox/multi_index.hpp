#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nnapprox {

/// Exponent vector k of the monomial x^k = x_1^{k_1} ... x_d^{k_d}.
struct MultiIndex {
  std::vector<int> k;

  std::size_t dim() const noexcept { return k.size(); }
  int degree() const noexcept;
  double monomial(std::span<const double> x) const;
  std::string to_string() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Graded-lexicographic order: by degree, then lexicographically by k.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// All k in N_0^d with |k|_1 < gamma, in graded-lexicographic order.
std::vector<MultiIndex> enumerate_multi_indices(int d, int gamma);

/// C_{d,gamma} = binom(d + gamma - 1, d).
std::size_t count_multi_indices(int d, int gamma);

}  // namespace nnapprox
