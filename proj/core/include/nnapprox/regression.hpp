#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "nnapprox/network.hpp"
#include "nnapprox/targets.hpp"

namespace nnapprox {

/// Dense row-major weights of an Abs network with widths (p_0, ..., p_{L+1}).
/// The regression input is (1, x), so p_0 = d + 1.
struct Weights {
  std::vector<std::size_t> widths;
  std::vector<std::vector<double>> w;  ///< w[i] is p_{i+1} x p_i

  static Weights zeros(std::vector<std::size_t> widths);
  /// Uniform[-s, s] with s = (1 / fan_in)^{1/2}, per matrix.
  static Weights random(std::vector<std::size_t> widths, std::uint64_t seed);
  static Weights from_network(const Network& net);

  std::size_t num_matrices() const noexcept { return w.size(); }
  double& at(std::size_t i, std::size_t row, std::size_t col) { return w[i][row * widths[i] + col]; }
  double at(std::size_t i, std::size_t row, std::size_t col) const { return w[i][row * widths[i] + col]; }
  Network to_network() const;

  Weights& axpy(double a, const Weights& x);  ///< *this += a x
  double dot(const Weights& other) const;
};

struct Dataset {
  std::size_t d = 1;
  std::vector<std::vector<double>> x;  ///< raw inputs in [0,1]^d
  std::vector<double> y;

  std::size_t size() const noexcept { return y.size(); }
};

struct RegressionConfig {
  std::size_t n = 128;
  std::size_t d = 1;
  AnalyticTarget target;
  double noise_sd = 0.0;
  /// Hidden widths (p_1, ..., p_L); p_0 = d + 1 and p_{L+1} = 1 are implied.
  std::vector<std::size_t> hidden;
  /// Unset means lambda_auto(n, widths, lambda_c).
  std::optional<double> lambda;
  double lambda_c = 1.0;
  /// Constant C of the remainder term in the oracle bound.
  double oracle_c = 1.0;
  std::size_t max_epochs = 2000;
  double initial_step = 0.1;
  std::uint64_t seed = 0;
  std::size_t holdout = 10000;

  std::vector<std::size_t> widths() const;
  double resolved_lambda() const;
};

/// c log2^3(n) (sum_{i=1}^L log2 p_i)^{1/2} / sqrt(n)
double lambda_auto(std::size_t n, const std::vector<std::size_t>& widths, double c = 1.0);

/// X uniform on [0,1]^d, Y = f0(X) + N(0, noise_sd^2), from mt19937_64(seed).
Dataset generate_data(const RegressionConfig& config, std::uint64_t seed);

/// Forward pass on the augmented input (1, x).
double predict(const Weights& w, const std::vector<double>& x);

/// (1/n) sum (Y_i - f(X_i))^2
double empirical_risk(const Weights& w, const Dataset& data);
Weights risk_gradient(const Weights& w, const Dataset& data);

/// 1^T |W_L| ... |W_0| 1
double weights_path_norm(const Weights& w);
/// sign(W_i) * (left_i outer right_i); the subgradient is 0 at zero entries.
Weights path_norm_gradient(const Weights& w);

/// Smallest |pre-activation| over the data (used by gradient checks).
double min_abs_preactivation(const Weights& w, const Dataset& data);

struct FitReport {
  double objective = 0.0;
  double risk = 0.0;
  double penalty = 0.0;
  double path_norm = 0.0;
  double heldout_mse = 0.0;
  double lambda = 0.0;
  std::optional<double> oracle_rhs;
  std::size_t epochs = 0;
  std::size_t accepted_steps = 0;
  std::string stop_reason;
  std::vector<double> objective_history;  ///< after every accepted step, starting at init

  nlohmann::json to_json(bool include_history = false) const;
};

struct FitResult {
  Network net;
  Weights weights;
  FitReport report;
};

/// Full-batch gradient descent with Armijo backtracking on
/// (1/n) sum (Y_i - f(X_i))^2 + lambda path_norm(f).
FitResult fit(const RegressionConfig& config, const Dataset& data);
/// Same, from explicit initial weights.
FitResult fit_from(const RegressionConfig& config, const Dataset& data, Weights init);

/// Monte Carlo estimate of ||f - f0||^2 under uniform X, with `samples` points.
double mc_squared_error(const Network& candidate, const AnalyticTarget& f0, std::size_t samples,
                        std::uint64_t seed);

struct OracleRhs {
  double approx = 0.0;     ///< MC ||f - f0||^2
  double penalty = 0.0;    ///< lambda ||f||_x
  double remainder = 0.0;  ///< C sum_{i=1}^L p_i log2^3 n / n
  double total = 0.0;      ///< 2 (approx + penalty) + remainder

  nlohmann::json to_json() const;
};

/// Evaluates the bracketed oracle-inequality expression at `candidate`, whose
/// input must be (1, x). The remainder uses the config's architecture.
OracleRhs oracle_rhs(const RegressionConfig& config, const Network& candidate);

}  // namespace nnapprox
