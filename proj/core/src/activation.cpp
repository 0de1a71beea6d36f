#include "nnapprox/activation.hpp"

#include <utility>

#include "nnapprox/error.hpp"

namespace nnapprox {

Activation Activation::general(Selector selector, std::string name) {
  if (!selector) throw Error("general activation needs a selector");
  Activation a(ActivationKind::General);
  a.selector_ = std::make_shared<const Selector>(std::move(selector));
  a.general_name_ = std::move(name);
  return a;
}

Activation Activation::from_name(std::string_view name) {
  if (name == "identity") return identity();
  if (name == "relu") return relu();
  if (name == "abs") return abs();
  throw Error("unknown activation '" + std::string(name) + "'");
}

std::string Activation::name() const {
  switch (kind_) {
    case ActivationKind::Identity:
      return "identity";
    case ActivationKind::ReLU:
      return "relu";
    case ActivationKind::Abs:
      return "abs";
    case ActivationKind::General:
      return general_name_;
  }
  return {};
}

int Activation::sign(double x) const {
  switch (kind_) {
    case ActivationKind::Identity:
      return 1;
    case ActivationKind::ReLU:
      return x >= 0.0 ? 1 : 0;
    case ActivationKind::Abs:
      return x >= 0.0 ? 1 : -1;
    case ActivationKind::General: {
      const int s = (*selector_)(x);
      return s > 0 ? 1 : (s < 0 ? -1 : 0);
    }
  }
  return 1;
}

double Activation::subderivative(double x) const {
  switch (kind_) {
    case ActivationKind::Identity:
      return 1.0;
    case ActivationKind::ReLU:
      return x > 0.0 ? 1.0 : 0.0;
    case ActivationKind::Abs:
      return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    case ActivationKind::General:
      return sign(x);
  }
  return 1.0;
}

}  // namespace nnapprox
