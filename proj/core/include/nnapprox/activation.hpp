#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace nnapprox {

enum class ActivationKind { Identity, ReLU, Abs, General };

/// Piecewise-linear activation alpha(x) = s(x) * x for a sign selector
/// s : R -> {-1, 0, +1}. Identity, ReLU and the absolute value are the three
/// named members of the family; General wraps an arbitrary selector.
///
/// At zero every variant selects +1 (all choices give alpha(0) = 0).
class Activation {
 public:
  using Selector = std::function<int(double)>;

  static Activation identity() { return Activation(ActivationKind::Identity); }
  static Activation relu() { return Activation(ActivationKind::ReLU); }
  static Activation abs() { return Activation(ActivationKind::Abs); }
  /// Selector results are clamped to {-1, 0, +1}.
  static Activation general(Selector selector, std::string name = "general");

  /// "identity", "relu", "abs"; throws for anything else.
  static Activation from_name(std::string_view name);

  ActivationKind kind() const noexcept { return kind_; }
  std::string name() const;

  int sign(double x) const;
  double operator()(double x) const { return sign(x) * x; }

  /// Derivative used by the trainers: sign(x) for Abs with 0 at 0, the
  /// Heaviside step for ReLU (0 at 0), 1 for Identity.
  double subderivative(double x) const;

  /// Two General activations compare equal only if they share a selector.
  friend bool operator==(const Activation& a, const Activation& b) noexcept {
    return a.kind_ == b.kind_ && a.selector_ == b.selector_;
  }

 private:
  explicit Activation(ActivationKind kind) : kind_(kind) {}

  ActivationKind kind_;
  std::shared_ptr<const Selector> selector_;
  std::string general_name_;
};

}  // namespace nnapprox
