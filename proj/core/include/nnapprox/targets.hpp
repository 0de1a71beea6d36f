#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nnapprox/multi_index.hpp"
#include "nnapprox/polynomial.hpp"

namespace nnapprox {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// A function on a box (by default [0,1]^d) with optional analytic metadata.
struct AnalyticTarget {
  int dim = 1;
  std::function<double(std::span<const double>)> evaluator;
  /// Declared sup bound F on the continuation region.
  std::optional<double> sup_bound;
  /// Declared Bernstein ellipse parameter rho.
  std::optional<double> rho;
  /// False when the evaluator must not be called from several threads.
  bool concurrent_safe = true;
  std::vector<Interval> domain;
  std::string name;

  double operator()(std::span<const double> x) const { return evaluator(x); }
  /// Per-axis interval, defaulting to [0,1].
  Interval axis(std::size_t i) const { return i < domain.size() ? domain[i] : Interval{}; }
};

/// Power series sum_k a_k x^k with sum |a_k| <= abs_sum_bound.
struct PowerSeries {
  int dim = 1;
  double abs_sum_bound = 0.0;
  std::function<double(const MultiIndex&)> coefficient;
  /// Set when coefficients are only known up to this degree. Unset means
  /// every coefficient is available (possibly zero).
  std::optional<int> available_degree;
  /// Sum of the series, when known in closed form.
  std::function<double(std::span<const double>)> closed_form;
  std::string name;
};

/// Built-in targets: "inv2mx" prod 1/(2 - x_i), "exp-sum" e^{sum x_i},
/// "runge" 1/(1 + 25|x|^2), "product" prod x_i, "square" x_1^2, "one", "zero".
AnalyticTarget builtin_target(std::string_view name, int dim);
std::vector<std::string> builtin_target_names();

/// Built-in series: "inv2mx" (a_k = prod 2^{-(k_i+1)}, F = 1) and
/// "exp-sum" (a_k = prod 1/k_i!, F = e^d).
PowerSeries builtin_series(std::string_view name, int dim);

/// A finite polynomial viewed as a power series with every other coefficient 0.
PowerSeries series_from_polynomial(const MonomialPolynomial& p, std::string name = "polynomial");

/// {"d", "terms": [{"k", "a"}], "F"?, "complete"?}. When "complete" is false
/// the coefficients are only available up to the highest listed degree.
PowerSeries series_from_json(const nlohmann::json& doc);

AnalyticTarget target_from_polynomial(const MonomialPolynomial& p, std::string name = "polynomial");
AnalyticTarget target_from_series(const PowerSeries& s);

}  // namespace nnapprox
