#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "nnapprox/activation.hpp"
#include "nnapprox/network.hpp"

namespace nnapprox {

/// Parameters of the covering-number bound for the class F(L, p, B) of
/// networks with path norm at most B, on n points of sup norm at most r.
/// d is taken to be p_0.
struct EntropyBoundSpec {
  double eps = 1.0;
  std::size_t L = 0;
  std::vector<std::size_t> p;  ///< L + 2 widths
  double B = 1.0;
  double r = 1.0;
  std::size_t n = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static EntropyBoundSpec from_json(const nlohmann::json& doc);
};

/// ceil(b^2 r^2 / eps^2) log2(2d + 1)
double linear_bound(double b, double r, double eps, std::size_t d);

/// sum_{i=1}^L p_i log2(3n) + ceil(B^2 r^2 / eps^2) log2(2 P d + 1), P = prod_{i=1}^L p_i.
double network_bound(const EntropyBoundSpec& spec);

/// Draws networks of shape p with independent uniform[-1,1] weights. When the
/// path norm exceeds B every matrix is scaled by (B / path_norm)^{1/(L+1)},
/// which lands exactly on the cap up to rounding.
class NetworkSampler {
 public:
  NetworkSampler(std::vector<std::size_t> widths, double B, Activation activation);

  Network operator()(std::mt19937_64& rng) const;

  const std::vector<std::size_t>& widths() const noexcept { return widths_; }
  double cap() const noexcept { return B_; }
  const Activation& activation() const noexcept { return activation_; }

 private:
  std::vector<std::size_t> widths_;
  double B_;
  Activation activation_;
};

/// n points drawn uniformly from [-r, r]^dim.
std::vector<std::vector<double>> sample_points(std::size_t n, std::size_t dim, double r,
                                               std::mt19937_64& rng);

/// Indices of greedy centers: a vector becomes a new center when it is
/// farther than eps, in the empirical norm (1/n sum_i v_i^2)^{1/2}, from every
/// existing center.
std::vector<std::size_t> greedy_cover(const std::vector<std::vector<double>>& values, double eps);

struct CoveringResult {
  std::size_t size = 0;
  double log2_size = 0.0;
  std::size_t samples = 0;
  double max_path_norm = 0.0;
};

using ClassSampler = std::function<Network(std::mt19937_64&)>;

/// Samples `trials` scalar networks, evaluates them on `points` and returns the
/// greedy cover size of the resulting value vectors. A sampled network whose
/// path norm exceeds `cap` (beyond rounding) raises an error.
CoveringResult empirical_covering(const ClassSampler& sampler, double cap,
                                  const std::vector<std::vector<double>>& points, double eps,
                                  std::size_t trials, std::uint64_t seed);
CoveringResult empirical_covering(const NetworkSampler& sampler,
                                  const std::vector<std::vector<double>>& points, double eps,
                                  std::size_t trials, std::uint64_t seed);

}  // namespace nnapprox
