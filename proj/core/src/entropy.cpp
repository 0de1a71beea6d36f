#include "nnapprox/entropy.hpp"

#include <cmath>
#include <sstream>

#include "nnapprox/error.hpp"
#include "nnapprox/parallel.hpp"

namespace nnapprox {

namespace {

double ceil_ratio(double b, double r, double eps) { return std::ceil((b * b * r * r) / (eps * eps)); }

}  // namespace

void EntropyBoundSpec::validate() const {
  if (!(eps > 0.0) || !(B > 0.0) || !(r > 0.0) || n < 1) {
    throw Error("entropy spec: eps, B, r and n must be positive");
  }
  if (p.size() != L + 2) throw DimensionError("entropy spec: p must have L + 2 entries");
  for (auto w : p) {
    if (w < 1) throw Error("entropy spec: widths must be >= 1");
  }
}

nlohmann::json EntropyBoundSpec::to_json() const {
  return {{"eps", eps}, {"L", L}, {"p", p}, {"B", B}, {"r", r}, {"n", n}};
}

EntropyBoundSpec EntropyBoundSpec::from_json(const nlohmann::json& doc) {
  EntropyBoundSpec s;
  s.eps = doc.at("eps").get<double>();
  s.p = doc.at("p").get<std::vector<std::size_t>>();
  s.L = doc.contains("L") ? doc.at("L").get<std::size_t>() : (s.p.size() >= 2 ? s.p.size() - 2 : 0);
  s.B = doc.at("B").get<double>();
  s.r = doc.at("r").get<double>();
  s.n = doc.at("n").get<std::size_t>();
  s.validate();
  return s;
}

double linear_bound(double b, double r, double eps, std::size_t d) {
  return ceil_ratio(b, r, eps) * std::log2(2.0 * double(d) + 1.0);
}

double network_bound(const EntropyBoundSpec& spec) {
  spec.validate();
  double hidden = 0.0;
  double P = 1.0;
  for (std::size_t i = 1; i <= spec.L; ++i) {
    hidden += double(spec.p[i]);
    P *= double(spec.p[i]);
  }
  const double d = double(spec.p[0]);
  const double head = spec.L == 0 ? 0.0 : hidden * std::log2(3.0 * double(spec.n));
  return head + ceil_ratio(spec.B, spec.r, spec.eps) * std::log2(2.0 * P * d + 1.0);
}

NetworkSampler::NetworkSampler(std::vector<std::size_t> widths, double B, Activation activation)
    : widths_(std::move(widths)), B_(B), activation_(std::move(activation)) {
  if (widths_.size() < 2) throw DimensionError("sampler needs at least two widths");
  if (!(B_ >= 0.0)) throw Error("sampler cap must be >= 0");
}

Network NetworkSampler::operator()(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<std::vector<double>>> dense;
  for (std::size_t i = 0; i + 1 < widths_.size(); ++i) {
    std::vector<std::vector<double>> w(widths_[i + 1], std::vector<double>(widths_[i]));
    for (auto& row : w) {
      for (auto& v : row) v = u(rng);
    }
    dense.push_back(std::move(w));
  }
  std::vector<Matrix> mats;
  for (const auto& w : dense) mats.push_back(Matrix::from_rows(w));
  Network net(activation_, mats);
  const double pn = path_norm(net);
  if (pn > B_) {
    const double scale = std::pow(B_ / pn, 1.0 / double(mats.size()));
    for (auto& m : mats) m = m.scaled(scale);
    net = Network(activation_, std::move(mats));
  }
  return net;
}

std::vector<std::vector<double>> sample_points(std::size_t n, std::size_t dim, double r,
                                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& x : pts) {
    for (auto& v : x) v = u(rng);
  }
  return pts;
}

std::vector<std::size_t> greedy_cover(const std::vector<std::vector<double>>& values, double eps) {
  if (!(eps > 0.0)) throw Error("cover radius must be positive");
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = values[i];
    const double n = double(v.size());
    bool covered = false;
    for (std::size_t c : centers) {
      double s = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double t = v[j] - values[c][j];
        s += t * t;
      }
      if (std::sqrt(s / n) <= eps) {
        covered = true;
        break;
      }
    }
    if (!covered) centers.push_back(i);
  }
  return centers;
}

CoveringResult empirical_covering(const NetworkSampler& sampler,
                                  const std::vector<std::vector<double>>& points, double eps,
                                  std::size_t trials, std::uint64_t seed) {
  return empirical_covering([&sampler](std::mt19937_64& rng) { return sampler(rng); },
                            sampler.cap(), points, eps, trials, seed);
}

CoveringResult empirical_covering(const ClassSampler& sampler, double cap,
                                  const std::vector<std::vector<double>>& points, double eps,
                                  std::size_t trials, std::uint64_t seed) {
  if (points.empty()) throw Error("empirical covering needs at least one point");
  // draw sequentially so the sample does not depend on the worker count
  std::mt19937_64 rng(seed);
  std::vector<Network> nets;
  nets.reserve(trials);
  CoveringResult res;
  for (std::size_t t = 0; t < trials; ++t) {
    Network net = sampler(rng);
    if (net.output_dim() != 1) throw DimensionError("empirical covering needs scalar networks");
    const double pn = path_norm(net);
    if (pn > cap * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "sampled network " << t << " violates the path-norm cap: " << pn << " > " << cap;
      throw Error(msg.str());
    }
    res.max_path_norm = std::max(res.max_path_norm, pn);
    nets.push_back(std::move(net));
  }
  std::vector<std::vector<double>> values(trials, std::vector<double>(points.size()));
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      for (std::size_t i = 0; i < points.size(); ++i) values[t][i] = nets[t].eval(points[i]).front();
    }
  });
  res.samples = trials;
  res.size = greedy_cover(values, eps).size();
  res.log2_size = res.size > 0 ? std::log2(double(res.size)) : 0.0;
  return res;
}

}  // namespace nnapprox
