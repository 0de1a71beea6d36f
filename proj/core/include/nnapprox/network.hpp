#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nnapprox/activation.hpp"
#include "nnapprox/matrix.hpp"

namespace nnapprox {

/// f(x) = W_L a(W_{L-1} a( ... a(W_0 x))).
///
/// There are no shift vectors; constructions feed a constant 1 as the first
/// input coordinate instead, and that coordinate counts toward p_0. W_i has
/// shape p_{i+1} x p_i. Networks are immutable once built apart from their
/// free-form metadata, so evaluation and the norms are safe to call
/// concurrently.
class Network {
 public:
  using Meta = nlohmann::json;

  Network(Activation activation, std::vector<Matrix> weights, Meta meta = Meta::object());

  const Activation& activation() const noexcept { return activation_; }
  const std::vector<Matrix>& weights() const noexcept { return weights_; }
  const Matrix& layer(std::size_t i) const { return weights_.at(i); }

  /// Number of hidden layers L; there are L + 1 weight matrices.
  std::size_t depth() const noexcept { return weights_.size() - 1; }
  std::size_t num_matrices() const noexcept { return weights_.size(); }
  std::size_t input_dim() const noexcept { return weights_.front().cols(); }
  std::size_t output_dim() const noexcept { return weights_.back().rows(); }
  /// (p_0, ..., p_{L+1})
  std::vector<std::size_t> widths() const;
  std::size_t max_width() const;

  const Meta& meta() const noexcept { return meta_; }
  void set_meta(const std::string& key, Meta value) { meta_[key] = std::move(value); }

  /// Throws DimensionError naming the offending layer.
  std::vector<double> eval(std::span<const double> x) const;
  double eval_scalar(std::span<const double> x) const;

 private:
  Activation activation_;
  std::vector<Matrix> weights_;
  Meta meta_;
};

/// |W_L| |W_{L-1}| ... |W_0|, shape p_{L+1} x p_0.
Matrix path_matrix(const Network& net);
/// Sum of the absolute entries of the path matrix.
double path_norm(const Network& net);

double l1_param_norm(const Network& net);
std::vector<double> per_layer_l1(const Network& net);

/// x -> second(a(first(x))).
Network compose(const Network& first, const Network& second);

/// Block-diagonal stack: inputs and outputs are concatenated in order.
/// Shallower networks are padded in front with identity layers, which keeps
/// their values only on inputs the activation leaves unchanged (nonnegative
/// inputs for Abs and ReLU).
Network parallel(std::span<const Network> nets);

/// x -> net(a(W x))
Network prepend_layer(const Network& net, const Matrix& w);
/// x -> W a(net(x))
Network append_layer(const Network& net, const Matrix& w);

/// `matrices` identity matrices of size `width` (depth matrices - 1).
Network identity_chain(std::size_t width, std::size_t matrices, const Activation& activation);

}  // namespace nnapprox
