#pragma once

#include <map>
#include <span>

#include <nlohmann/json.hpp>

#include "nnapprox/multi_index.hpp"

namespace nnapprox {

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return graded_lex_less(a, b); }
};

/// sum_k c_k x^k over finitely many multi-indices of one dimension.
class MonomialPolynomial {
 public:
  using Terms = std::map<MultiIndex, double, GradedLexLess>;

  explicit MonomialPolynomial(int dim);

  int dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }

  /// Adds `coefficient` to the existing coefficient of x^k.
  void add_term(const MultiIndex& k, double coefficient);
  double coefficient(const MultiIndex& k) const;

  /// Highest |k|_1 with a stored term; -1 for the empty polynomial.
  int degree() const;
  double abs_coefficient_sum() const;
  double max_abs_coefficient() const;
  double eval(std::span<const double> x) const;

  /// {"d": d, "terms": [{"k": [...], "a": value}, ...]}
  nlohmann::json to_json() const;
  static MonomialPolynomial from_json(const nlohmann::json& doc);

 private:
  int dim_;
  Terms terms_;
};

}  // namespace nnapprox
