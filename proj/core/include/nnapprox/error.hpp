#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nnapprox {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A shape does not chain. `layer()` is the index of the offending weight
/// matrix, or npos when the mismatch is at the network boundary.
class DimensionError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  DimensionError(const std::string& what, std::size_t layer = npos)
      : Error(what), layer_(layer) {}

  std::size_t layer() const noexcept { return layer_; }

 private:
  std::size_t layer_;
};

class ActivationMismatch : public Error {
 public:
  using Error::Error;
};

/// A builder produced a network violating one of its own structural or
/// error-bound guarantees. Seeing this is always a bug.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace nnapprox
