#include "nnapprox/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "nnapprox/error.hpp"
#include "nnapprox/parallel.hpp"

namespace nnapprox {

GridSpec GridSpec::unit(std::size_t dim, std::size_t points_per_axis) {
  GridSpec g;
  g.box.assign(dim, Interval{0.0, 1.0});
  g.points_per_axis = points_per_axis;
  return g;
}

GridSpec GridSpec::with_step(std::size_t dim, double step, double lo, double hi) {
  if (!(step > 0.0)) throw Error("grid step must be positive");
  GridSpec g;
  g.box.assign(dim, Interval{lo, hi});
  g.points_per_axis = std::size_t(std::llround((hi - lo) / step)) + 1;
  return g;
}

GridSpec GridSpec::random(std::size_t dim, std::size_t count, std::uint64_t seed, double lo,
                          double hi) {
  GridSpec g;
  g.box.assign(dim, Interval{lo, hi});
  g.random_points = count;
  g.seed = seed;
  return g;
}

std::vector<std::vector<double>> GridSpec::points() const {
  if (box.empty()) throw Error("grid has no axes");
  std::vector<std::vector<double>> out;
  auto keep = [&](const std::vector<double>& x) {
    if (!simplex_sum) return true;
    double s = 0.0;
    for (double v : x) s += v;
    return s <= *simplex_sum + 1e-12;
  };
  if (random_points > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    out.reserve(random_points);
    for (std::size_t i = 0; i < random_points; ++i) {
      std::vector<double> x(box.size());
      for (std::size_t a = 0; a < box.size(); ++a) x[a] = box[a].lo + u(rng) * (box[a].hi - box[a].lo);
      if (keep(x)) out.push_back(std::move(x));
    }
    return out;
  }
  const std::size_t n = points_per_axis;
  if (n == 0) throw Error("grid needs at least one point per axis");
  auto coord = [&](std::size_t a, std::size_t i) {
    const auto& iv = box[a];
    if (open_lo) return iv.lo + (iv.hi - iv.lo) * double(i + 1) / double(n);
    if (n == 1) return iv.lo;
    return iv.lo + (iv.hi - iv.lo) * double(i) / double(n - 1);
  };
  std::vector<std::size_t> idx(box.size(), 0);
  while (true) {
    std::vector<double> x(box.size());
    for (std::size_t a = 0; a < box.size(); ++a) x[a] = coord(a, idx[a]);
    if (keep(x)) out.push_back(std::move(x));
    std::size_t a = box.size();
    while (a-- > 0) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
    if (a == std::size_t(-1)) break;
  }
  return out;
}

nlohmann::json GridSpec::to_json() const {
  nlohmann::json b = nlohmann::json::array();
  for (const auto& iv : box) b.push_back({iv.lo, iv.hi});
  nlohmann::json j = {{"box", b}};
  if (random_points > 0) {
    j["random_points"] = random_points;
    j["seed"] = seed;
  } else {
    j["points_per_axis"] = points_per_axis;
    j["open_lo"] = open_lo;
  }
  if (simplex_sum) j["simplex_sum"] = *simplex_sum;
  return j;
}

ErrorSweep max_abs_error(const Network& net, const Reference& ref, const GridSpec& grid) {
  if (net.input_dim() != grid.dim() + 1) {
    throw DimensionError("grid dimension does not match the network input (1, x)");
  }
  const auto pts = grid.points();
  struct Partial {
    double err = -1.0;
    std::size_t at = 0;
  };
  std::vector<Partial> partial(pts.size() == 0 ? 0 : std::min(pts.size(), worker_count() * 8));
  const std::size_t chunks = partial.size();
  if (chunks > 0) {
    parallel_for(chunks, [&](std::size_t cb, std::size_t ce) {
      std::vector<double> in(grid.dim() + 1);
      in[0] = 1.0;
      for (std::size_t c = cb; c < ce; ++c) {
        const std::size_t begin = pts.size() * c / chunks;
        const std::size_t end = pts.size() * (c + 1) / chunks;
        Partial best;
        for (std::size_t i = begin; i < end; ++i) {
          std::copy(pts[i].begin(), pts[i].end(), in.begin() + 1);
          const auto got = net.eval(in);
          const auto want = ref(pts[i]);
          if (want.size() != got.size()) throw DimensionError("reference output size mismatch");
          for (std::size_t o = 0; o < got.size(); ++o) {
            const double e = std::fabs(got[o] - want[o]);
            if (!std::isfinite(e)) throw NumericError("non-finite error at a grid point");
            if (e > best.err) best = {e, i};
          }
        }
        partial[c] = best;
      }
    });
  }
  ErrorSweep sweep;
  sweep.points = pts.size();
  Partial best;
  for (const auto& p : partial) {
    if (p.err > best.err) best = p;
  }
  if (best.err >= 0.0) {
    sweep.max_error = best.err;
    sweep.argmax = pts[best.at];
  }
  return sweep;
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
  nlohmann::json j = {{"construction", construction},
                      {"params", params},
                      {"grid", grid.to_json()},
                      {"points", points},
                      {"measured_max_error", measured},
                      {"claimed_bound", claimed},
                      {"argmax", argmax},
                      {"pass", pass}};
  if (include_timing) j["wall_clock_s"] = wall_clock_s;
  return j;
}

namespace {

VerificationReport run(const std::string& construction, const Network& net, const Reference& ref,
                       const GridSpec& grid, double claimed) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sweep = max_abs_error(net, ref, grid);
  const auto t1 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.construction = construction;
  r.params = net.meta();
  r.grid = grid;
  r.measured = sweep.max_error;
  r.claimed = claimed;
  r.argmax = sweep.argmax;
  r.points = sweep.points;
  r.pass = sweep.max_error <= claimed;
  r.wall_clock_s = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

}  // namespace

VerificationReport verify_sq(int m, const GridSpec& grid) {
  const Network net = build_sq(m);
  return run("sq", net, [](std::span<const double> x) { return std::vector<double>{x[0] * x[0]}; },
             grid, sq_error_bound(m));
}

VerificationReport verify_mult(int m, MultVariant v, const GridSpec& grid) {
  const Network net = build_mult(m, v);
  return run("mult", net,
             [](std::span<const double> x) { return std::vector<double>{x[0] * x[1]}; }, grid,
             mult_error_bound(m, v));
}

VerificationReport verify_multr(int m, int r, MultVariant v, const GridSpec& grid) {
  const Network net = build_multr(m, r, v);
  return run("multr", net,
             [](std::span<const double> x) {
               double p = 1.0;
               for (double xi : x) p *= xi;
               return std::vector<double>{p};
             },
             grid, multr_error_bound(m, r, v));
}

VerificationReport verify_mon(int m, int gamma, int d, MultVariant v, const GridSpec& grid) {
  const Network net = build_mon(m, gamma, d, v);
  const auto indices = enumerate_multi_indices(d, gamma);
  return run("mon", net,
             [indices](std::span<const double> x) {
               std::vector<double> out;
               out.reserve(indices.size());
               for (const auto& k : indices) out.push_back(k.monomial(x));
               return out;
             },
             grid, mon_error_bound(m, gamma, v));
}

GridSpec claimed_domain_grid(const std::string& construction, MultVariant v, std::size_t dim,
                             std::size_t points_per_axis) {
  GridSpec g = GridSpec::unit(dim, points_per_axis);
  if (construction == "sq") return g;
  if (construction == "mult") {
    if (v == MultVariant::PaperLiteral) g.simplex_sum = 1.0;
    return g;
  }
  if (construction == "multr" || construction == "mon") {
    if (v == MultVariant::PaperLiteral) g.box.assign(dim, Interval{0.0, 0.5});
    return g;
  }
  throw Error("unknown construction '" + construction + "'");
}

}  // namespace nnapprox
