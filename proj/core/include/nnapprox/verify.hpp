#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nnapprox/constructions.hpp"
#include "nnapprox/network.hpp"
#include "nnapprox/targets.hpp"

namespace nnapprox {

/// Reproducible set of evaluation points in a box.
///
/// A tensor grid with `points_per_axis` points per axis (endpoints included,
/// or the lower endpoint dropped when `open_lo` is set), optionally restricted
/// to the simplex sum x_i <= simplex_sum. With `random_points` > 0 the grid is
/// replaced by that many uniform samples drawn from mt19937_64(seed).
struct GridSpec {
  std::vector<Interval> box;
  std::size_t points_per_axis = 101;
  bool open_lo = false;
  std::optional<double> simplex_sum;
  std::size_t random_points = 0;
  std::uint64_t seed = 0;

  static GridSpec unit(std::size_t dim, std::size_t points_per_axis);
  /// Grid with spacing `step` on [lo, hi]^dim (hi included).
  static GridSpec with_step(std::size_t dim, double step, double lo = 0.0, double hi = 1.0);
  static GridSpec random(std::size_t dim, std::size_t count, std::uint64_t seed, double lo = 0.0,
                         double hi = 1.0);

  std::size_t dim() const noexcept { return box.size(); }
  /// Every point of the grid, after the simplex filter.
  std::vector<std::vector<double>> points() const;
  nlohmann::json to_json() const;
};

/// Expected network outputs at a point x (without the constant coordinate).
using Reference = std::function<std::vector<double>(std::span<const double>)>;

struct ErrorSweep {
  double max_error = 0.0;
  std::vector<double> argmax;
  std::size_t points = 0;
};

/// max over the grid's points and all output channels of |net(1, x) - ref(x)|,
/// evaluated concurrently.
ErrorSweep max_abs_error(const Network& net, const Reference& ref, const GridSpec& grid);

struct VerificationReport {
  std::string construction;
  nlohmann::json params = nlohmann::json::object();
  GridSpec grid;
  double measured = 0.0;
  double claimed = 0.0;
  std::vector<double> argmax;
  std::size_t points = 0;
  bool pass = false;
  double wall_clock_s = 0.0;

  /// Timing is the only nondeterministic field; leave it out for
  /// byte-reproducible output.
  nlohmann::json to_json(bool include_timing = true) const;
};

VerificationReport verify_sq(int m, const GridSpec& grid);
VerificationReport verify_mult(int m, MultVariant v, const GridSpec& grid);
VerificationReport verify_multr(int m, int r, MultVariant v, const GridSpec& grid);
VerificationReport verify_mon(int m, int gamma, int d, MultVariant v, const GridSpec& grid);

/// The variant's claimed domain: [0,1] for sq; the simplex x + y <= 1
/// (PaperLiteral) or [0,1]^2 for mult; [0,1/2]^dim (PaperLiteral) or
/// [0,1]^dim for multr and mon.
GridSpec claimed_domain_grid(const std::string& construction, MultVariant v, std::size_t dim,
                             std::size_t points_per_axis);

}  // namespace nnapprox
