#pragma once

#include <cstddef>
#include <optional>

#include <nlohmann/json.hpp>

#include "nnapprox/chebyshev.hpp"
#include "nnapprox/constructions.hpp"
#include "nnapprox/network.hpp"
#include "nnapprox/targets.hpp"
#include "nnapprox/verify.hpp"

namespace nnapprox {

/// gamma = ceil(ln(1/eps) / delta)
int power_series_gamma(double eps, double delta);
/// m = ceil(log2(1/eps))
int eps_to_m(double eps);

/// Structural bounds of the monomial network at (m, gamma).
struct MonShapeBounds {
  std::size_t matrices = 0;  ///< ceil(log2 gamma)(2m+5)+2
  std::size_t width = 0;     ///< 6 gamma (m+2) C_{d,gamma}
};
MonShapeBounds mon_shape_bounds(int m, int gamma, int d);

struct ApproxCertificate {
  std::string method;  ///< "power-series" or "cheb"
  MultVariant variant = MultVariant::Rescaled;
  int d = 1;
  int m = 1;
  int gamma = 1;
  double eps = 0.0;
  std::optional<double> delta;

  /// sum |a_k| bound for power series; sum |b_k| of the converted polynomial
  /// for Chebyshev.
  double coefficient_mass = 0.0;
  /// 2 F eps / delta^2 (PaperLiteral) or 6 F eps / delta^2 (Rescaled). Unset for
  /// Chebyshev, whose constant C is only known empirically.
  std::optional<double> claimed_error;
  GridSpec domain;

  double path_norm = 0.0;
  std::optional<double> path_norm_bound;
  std::size_t num_matrices = 0;
  std::size_t max_width = 0;
  /// Monomial-network bounds at (m, gamma + 1); the coefficient row adds one
  /// matrix on top.
  MonShapeBounds mon_bounds;

  std::optional<double> measured_error;
  std::size_t measured_points = 0;

  nlohmann::json to_json() const;
};

struct ApproxResult {
  Network net;
  ApproxCertificate certificate;
};

/// Appends one output row holding the coefficients of `poly` in the
/// monomial network's channel order. Terms beyond the network's channels are
/// an error.
Network append_coefficient_row(const Network& mon, const MonomialPolynomial& poly);

/// Power-series approximant on (0, 1 - delta]^d: the monomial network
/// Mon(m, gamma + 1, d) followed by the partial-sum coefficients a_k, |k| <= gamma.
/// PaperLiteral is verified on (0, min(1/2, 1 - delta)]^d. `grid_points` > 0
/// measures the sup error against the closed form (per axis).
ApproxResult build_power_series_net(const PowerSeries& series, double eps, double delta,
                                    MultVariant v, std::size_t grid_points = 0);

/// Chebyshev approximant on [0,1]^d with gamma = m = ceil(log2(1/eps)).
ApproxResult build_cheb_net(const AnalyticTarget& target, double eps,
                            MultVariant v = MultVariant::Rescaled, std::size_t grid_points = 0);

struct ParamBudget {
  std::size_t param_count = 0;  ///< sum of rows x cols over all matrices
  double l1_total = 0.0;
  double max_abs = 0.0;
  std::size_t count_bound = 0;  ///< (L+1) |p|_inf^2
  bool within = false;

  nlohmann::json to_json() const;
};
ParamBudget l1_param_budget(const Network& net);

}  // namespace nnapprox
