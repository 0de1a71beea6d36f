#include "nnapprox/network.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nnapprox/error.hpp"

namespace nnapprox {

Network::Network(Activation activation, std::vector<Matrix> weights, Meta meta)
    : activation_(std::move(activation)), weights_(std::move(weights)), meta_(std::move(meta)) {
  if (weights_.empty()) throw DimensionError("network needs at least one weight matrix");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].empty()) {
      throw DimensionError("layer " + std::to_string(i) + " is empty", i);
    }
    if (i > 0 && weights_[i].cols() != weights_[i - 1].rows()) {
      throw DimensionError("layer " + std::to_string(i) + " expects " +
                               std::to_string(weights_[i].cols()) + " inputs but layer " +
                               std::to_string(i - 1) + " produces " +
                               std::to_string(weights_[i - 1].rows()),
                           i);
    }
  }
  if (!meta_.is_object()) meta_ = Meta::object();
}

std::vector<std::size_t> Network::widths() const {
  std::vector<std::size_t> p;
  p.reserve(weights_.size() + 1);
  p.push_back(input_dim());
  for (const auto& w : weights_) p.push_back(w.rows());
  return p;
}

std::size_t Network::max_width() const {
  const auto p = widths();
  return *std::max_element(p.begin(), p.end());
}

std::vector<double> Network::eval(std::span<const double> x) const {
  if (x.size() != input_dim()) {
    throw DimensionError("layer 0 expects input of length " + std::to_string(input_dim()) +
                             ", got " + std::to_string(x.size()),
                         0);
  }
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    next.resize(weights_[i].rows());
    weights_[i].apply_into(cur, next);
    if (i + 1 < weights_.size()) {
      for (double& v : next) v = activation_(v);
    }
    std::swap(cur, next);
  }
  return cur;
}

double Network::eval_scalar(std::span<const double> x) const {
  if (output_dim() != 1) throw DimensionError("network output is not scalar");
  return eval(x).front();
}

Matrix path_matrix(const Network& net) {
  const auto& w = net.weights();
  Matrix acc = w.front().abs();
  for (std::size_t i = 1; i < w.size(); ++i) acc = w[i].abs() * acc;
  return acc;
}

double path_norm(const Network& net) { return path_matrix(net).l1_norm(); }

double l1_param_norm(const Network& net) {
  double s = 0.0;
  for (const auto& w : net.weights()) s += w.l1_norm();
  return s;
}

std::vector<double> per_layer_l1(const Network& net) {
  std::vector<double> out;
  out.reserve(net.num_matrices());
  for (const auto& w : net.weights()) out.push_back(w.l1_norm());
  return out;
}

Network compose(const Network& first, const Network& second) {
  if (!(first.activation() == second.activation())) {
    throw ActivationMismatch("compose: activations differ (" + first.activation().name() +
                             " vs " + second.activation().name() + ")");
  }
  if (second.input_dim() != first.output_dim()) {
    throw DimensionError("compose: first network outputs " + std::to_string(first.output_dim()) +
                         " values, second expects " + std::to_string(second.input_dim()));
  }
  std::vector<Matrix> w = first.weights();
  w.insert(w.end(), second.weights().begin(), second.weights().end());
  return Network(first.activation(), std::move(w));
}

Network parallel(std::span<const Network> nets) {
  if (nets.empty()) throw DimensionError("parallel: no networks");
  const Activation& act = nets.front().activation();
  std::size_t depth = 0;
  for (const auto& n : nets) {
    if (!(n.activation() == act)) throw ActivationMismatch("parallel: activations differ");
    depth = std::max(depth, n.num_matrices());
  }
  std::vector<std::vector<Matrix>> padded;
  padded.reserve(nets.size());
  for (const auto& n : nets) {
    std::vector<Matrix> w;
    w.reserve(depth);
    for (std::size_t i = n.num_matrices(); i < depth; ++i) {
      w.push_back(Matrix::identity(n.input_dim()));
    }
    w.insert(w.end(), n.weights().begin(), n.weights().end());
    padded.push_back(std::move(w));
  }
  std::vector<Matrix> layers;
  layers.reserve(depth);
  std::vector<Matrix> blocks(nets.size());
  for (std::size_t i = 0; i < depth; ++i) {
    for (std::size_t k = 0; k < nets.size(); ++k) blocks[k] = padded[k][i];
    layers.push_back(Matrix::block_diagonal(blocks));
  }
  return Network(act, std::move(layers));
}

Network prepend_layer(const Network& net, const Matrix& w) {
  if (w.rows() != net.input_dim()) {
    throw DimensionError("prepend_layer: matrix has " + std::to_string(w.rows()) +
                         " rows, network expects " + std::to_string(net.input_dim()));
  }
  std::vector<Matrix> layers;
  layers.reserve(net.num_matrices() + 1);
  layers.push_back(w);
  layers.insert(layers.end(), net.weights().begin(), net.weights().end());
  return Network(net.activation(), std::move(layers), net.meta());
}

Network append_layer(const Network& net, const Matrix& w) {
  if (w.cols() != net.output_dim()) {
    throw DimensionError("append_layer: matrix has " + std::to_string(w.cols()) +
                             " columns, network outputs " + std::to_string(net.output_dim()),
                         net.num_matrices());
  }
  std::vector<Matrix> layers = net.weights();
  layers.push_back(w);
  return Network(net.activation(), std::move(layers), net.meta());
}

Network identity_chain(std::size_t width, std::size_t matrices, const Activation& activation) {
  if (matrices == 0) throw DimensionError("identity_chain: need at least one matrix");
  return Network(activation, std::vector<Matrix>(matrices, Matrix::identity(width)));
}

}  // namespace nnapprox
