#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nnapprox/polynomial.hpp"
#include "nnapprox/targets.hpp"

namespace nnapprox {

/// Largest n for which every coefficient of T_n is an exactly representable
/// double (the coefficients first exceed 2^53 at n = 45).
inline constexpr int kMaxChebyshevDegree = 44;

/// Monomial coefficients (c_0, ..., c_n) of T_n from
/// T_0 = 1, T_1 = x, T_{n+1} = 2x T_n - T_{n-1}. Exact.
std::vector<double> cheb_poly_coeffs(int n);

/// T_n(t) by the three-term recursion.
double cheb_eval(int n, double t);

/// p(x) = sum_k a_k T_{k_1}(t_1) ... T_{k_d}(t_d), where t_i is x_i mapped
/// affinely from the axis interval onto [-1, 1].
class ChebyshevSeries {
 public:
  ChebyshevSeries(std::vector<int> degrees, std::vector<Interval> domain);

  int dim() const noexcept { return int(degrees_.size()); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const std::vector<Interval>& domain() const noexcept { return domain_; }

  /// Flat coefficient tensor, last axis fastest.
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::vector<int> index_of(std::size_t flat) const;
  std::size_t flat_index(std::span<const int> k) const;

  double coefficient(std::span<const int> k) const { return coeffs_[flat_index(k)]; }
  void set_coefficient(std::span<const int> k, double value);
  void set_flat(std::size_t flat, double value);

  double to_unit(std::size_t axis, double x) const;
  double eval(std::span<const double> x) const;

  /// Drops every coefficient with |k|_1 > total_degree.
  ChebyshevSeries truncated(int total_degree) const;

 private:
  std::vector<int> degrees_;
  std::vector<Interval> domain_;
  std::vector<std::size_t> strides_;
  std::vector<double> coeffs_;
};

/// Tensor-product Chebyshev-Gauss-Lobatto interpolation on the target's
/// domain: nodes cos(j pi / n) per axis, trapezoidal (halved endpoint)
/// weights. Reproduces polynomials of per-axis degree <= n up to rounding.
ChebyshevSeries cheb_fit(const AnalyticTarget& target, std::vector<int> degrees);

/// Truncates to total degree <= gamma and expands every T-product (composed
/// with the affine domain map) into monomials of the original variables.
MonomialPolynomial cheb_to_monomial(const ChebyshevSeries& series, int gamma);

struct GeometricDecayFit {
  double constant = 0.0;  ///< C
  double rho = 1.0;       ///< rho
  std::size_t used = 0;   ///< coefficients above the rounding floor
};

/// Least-squares fit of log|a_k| ~ log C - |k|_2 log rho over coefficients
/// above `relative_floor` * max|a_k|; C is then raised to the smallest value
/// for which |a_k| <= C rho^{-|k|_2} holds on every fitted coefficient.
GeometricDecayFit fit_geometric_decay(const ChebyshevSeries& series,
                                      double relative_floor = 1e-13);

/// Smallest C with |a_k| <= C rho^{-|k|_2} for all k.
double geometric_constant(const ChebyshevSeries& series, double rho);

}  // namespace nnapprox
