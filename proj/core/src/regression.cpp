#include "nnapprox/regression.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "nnapprox/error.hpp"
#include "nnapprox/parallel.hpp"

namespace nnapprox {

namespace {

// Samples per reduction block. Fixed, so sums do not depend on the worker count.
constexpr std::size_t kBlock = 64;
constexpr double kArmijo = 1e-4;
constexpr std::uint64_t kHoldoutStream = 0x9e3779b97f4a7c15ULL;

void check_widths(const std::vector<std::size_t>& widths) {
  if (widths.size() < 2) throw DimensionError("architecture needs at least two widths");
  for (auto p : widths) {
    if (p < 1) throw DimensionError("architecture widths must be >= 1");
  }
}

struct Trace {
  std::vector<std::vector<double>> z;  // z[i] = input of matrix i
  std::vector<std::vector<double>> h;  // h[i] = W_i z[i]
};

double forward(const Weights& w, const std::vector<double>& x, Trace* trace) {
  std::vector<double> z(x.size() + 1);
  z[0] = 1.0;
  std::copy(x.begin(), x.end(), z.begin() + 1);
  if (z.size() != w.widths.front()) throw DimensionError("input does not match p_0 - 1", 0);
  for (std::size_t i = 0; i < w.num_matrices(); ++i) {
    const std::size_t rows = w.widths[i + 1];
    const std::size_t cols = w.widths[i];
    std::vector<double> h(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* row = w.w[i].data() + r * cols;
      double s = 0.0;
      for (std::size_t c = 0; c < cols; ++c) s += row[c] * z[c];
      h[r] = s;
    }
    if (trace) {
      trace->z.push_back(z);
      trace->h.push_back(h);
    }
    if (i + 1 == w.num_matrices()) return h.front();
    for (auto& v : h) v = std::fabs(v);
    z = std::move(h);
  }
  return 0.0;
}

double sgn0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Per-block partial results, combined in block order.
template <class Body>
void for_blocks(std::size_t n, Body body) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) body(b, b * kBlock, std::min(n, (b + 1) * kBlock));
  });
}

double objective(const Weights& w, const Dataset& data, double lambda) {
  return empirical_risk(w, data) + lambda * weights_path_norm(w);
}

Weights objective_gradient(const Weights& w, const Dataset& data, double lambda) {
  Weights g = risk_gradient(w, data);
  if (lambda != 0.0) g.axpy(lambda, path_norm_gradient(w));
  return g;
}

}  // namespace

Weights Weights::zeros(std::vector<std::size_t> widths) {
  check_widths(widths);
  Weights out;
  out.widths = std::move(widths);
  for (std::size_t i = 0; i + 1 < out.widths.size(); ++i) {
    out.w.emplace_back(out.widths[i + 1] * out.widths[i], 0.0);
  }
  return out;
}

Weights Weights::random(std::vector<std::size_t> widths, std::uint64_t seed) {
  Weights out = zeros(std::move(widths));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < out.w.size(); ++i) {
    const double s = std::sqrt(1.0 / double(out.widths[i]));
    std::uniform_real_distribution<double> u(-s, s);
    for (auto& v : out.w[i]) v = u(rng);
  }
  return out;
}

Weights Weights::from_network(const Network& net) {
  std::vector<std::size_t> widths = net.widths();
  Weights out = zeros(widths);
  for (std::size_t i = 0; i < net.num_matrices(); ++i) {
    const auto& m = net.layer(i);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& e : m.row(r)) out.at(i, r, e.col) = e.value;
    }
  }
  return out;
}

Network Weights::to_network() const {
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < w.size(); ++i) {
    mats.push_back(Matrix::from_dense(widths[i + 1], widths[i], w[i]));
  }
  return Network(Activation::abs(), std::move(mats));
}

Weights& Weights::axpy(double a, const Weights& x) {
  if (x.widths != widths) throw DimensionError("weights have different shapes");
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w[i].size(); ++j) w[i][j] += a * x.w[i][j];
  }
  return *this;
}

double Weights::dot(const Weights& other) const {
  if (other.widths != widths) throw DimensionError("weights have different shapes");
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w[i].size(); ++j) s += w[i][j] * other.w[i][j];
  }
  return s;
}

std::vector<std::size_t> RegressionConfig::widths() const {
  std::vector<std::size_t> p{d + 1};
  p.insert(p.end(), hidden.begin(), hidden.end());
  p.push_back(1);
  return p;
}

double RegressionConfig::resolved_lambda() const {
  const double l = lambda ? *lambda : lambda_auto(n, widths(), lambda_c);
  if (!(l >= 0.0)) throw Error("lambda must be >= 0");
  return l;
}

double lambda_auto(std::size_t n, const std::vector<std::size_t>& widths, double c) {
  if (n < 2) throw Error("lambda_auto needs n >= 2");
  check_widths(widths);
  double s = 0.0;
  for (std::size_t i = 1; i + 1 < widths.size(); ++i) s += std::log2(double(widths[i]));
  const double lg = std::log2(double(n));
  return c * lg * lg * lg * std::sqrt(s) / std::sqrt(double(n));
}

Dataset generate_data(const RegressionConfig& config, std::uint64_t seed) {
  if (config.n < 1) throw Error("n must be >= 1");
  if (!config.target.evaluator) throw Error("regression target has no evaluator");
  if (std::size_t(config.target.dim) != config.d) throw DimensionError("target dimension != d");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset data;
  data.d = config.d;
  data.x.reserve(config.n);
  data.y.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    std::vector<double> x(config.d);
    for (auto& v : x) v = u(rng);
    const double e = noise(rng);
    data.y.push_back(config.target(x) + (config.noise_sd == 0.0 ? 0.0 : config.noise_sd * e));
    data.x.push_back(std::move(x));
  }
  return data;
}

double predict(const Weights& w, const std::vector<double>& x) { return forward(w, x, nullptr); }

double empirical_risk(const Weights& w, const Dataset& data) {
  if (data.size() == 0) throw Error("empty dataset");
  const std::size_t blocks = (data.size() + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  for_blocks(data.size(), [&](std::size_t b, std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double r = data.y[i] - forward(w, data.x[i], nullptr);
      s += r * r;
    }
    partial[b] = s;
  });
  double s = 0.0;
  for (double v : partial) s += v;
  return s / double(data.size());
}

Weights risk_gradient(const Weights& w, const Dataset& data) {
  if (data.size() == 0) throw Error("empty dataset");
  const std::size_t blocks = (data.size() + kBlock - 1) / kBlock;
  std::vector<Weights> partial(blocks);
  const double scale = 2.0 / double(data.size());
  for_blocks(data.size(), [&](std::size_t b, std::size_t begin, std::size_t end) {
    Weights g = Weights::zeros(w.widths);
    for (std::size_t s = begin; s < end; ++s) {
      Trace t;
      const double f = forward(w, data.x[s], &t);
      // d/df of (y - f)^2 / n
      std::vector<double> delta{-scale * (data.y[s] - f)};
      for (std::size_t i = w.num_matrices(); i-- > 0;) {
        const std::size_t rows = w.widths[i + 1];
        const std::size_t cols = w.widths[i];
        const auto& z = t.z[i];
        for (std::size_t r = 0; r < rows; ++r) {
          if (delta[r] == 0.0) continue;
          double* gr = g.w[i].data() + r * cols;
          for (std::size_t c = 0; c < cols; ++c) gr[c] += delta[r] * z[c];
        }
        if (i == 0) break;
        // back through W_i, then through a(.) applied to h[i-1]
        std::vector<double> next(cols, 0.0);
        for (std::size_t r = 0; r < rows; ++r) {
          if (delta[r] == 0.0) continue;
          const double* wr = w.w[i].data() + r * cols;
          for (std::size_t c = 0; c < cols; ++c) next[c] += wr[c] * delta[r];
        }
        for (std::size_t c = 0; c < cols; ++c) next[c] *= sgn0(t.h[i - 1][c]);
        delta = std::move(next);
      }
    }
    partial[b] = std::move(g);
  });
  Weights g = Weights::zeros(w.widths);
  for (const auto& p : partial) g.axpy(1.0, p);
  return g;
}

double weights_path_norm(const Weights& w) {
  // right = |W_L| ... |W_0| 1
  std::vector<double> v(w.widths.front(), 1.0);
  for (std::size_t i = 0; i < w.num_matrices(); ++i) {
    const std::size_t rows = w.widths[i + 1];
    const std::size_t cols = w.widths[i];
    std::vector<double> out(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) out[r] += std::fabs(w.w[i][r * cols + c]) * v[c];
    }
    v = std::move(out);
  }
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

Weights path_norm_gradient(const Weights& w) {
  const std::size_t L1 = w.num_matrices();
  // right[i] = |W_{i-1}| ... |W_0| 1 (size p_i); left[i] = 1^T |W_L| ... |W_{i+1}| (size p_{i+1})
  std::vector<std::vector<double>> right(L1);
  right[0].assign(w.widths[0], 1.0);
  for (std::size_t i = 1; i < L1; ++i) {
    const std::size_t rows = w.widths[i];
    const std::size_t cols = w.widths[i - 1];
    right[i].assign(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) right[i][r] += std::fabs(w.w[i - 1][r * cols + c]) * right[i - 1][c];
    }
  }
  std::vector<std::vector<double>> left(L1);
  left[L1 - 1].assign(w.widths[L1], 1.0);
  for (std::size_t i = L1 - 1; i-- > 0;) {
    const std::size_t rows = w.widths[i + 2];
    const std::size_t cols = w.widths[i + 1];
    left[i].assign(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) left[i][c] += left[i + 1][r] * std::fabs(w.w[i + 1][r * cols + c]);
    }
  }
  Weights g = Weights::zeros(w.widths);
  for (std::size_t i = 0; i < L1; ++i) {
    const std::size_t rows = w.widths[i + 1];
    const std::size_t cols = w.widths[i];
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        g.w[i][r * cols + c] = sgn0(w.w[i][r * cols + c]) * left[i][r] * right[i][c];
      }
    }
  }
  return g;
}

double min_abs_preactivation(const Weights& w, const Dataset& data) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : data.x) {
    Trace t;
    forward(w, x, &t);
    for (std::size_t i = 0; i + 1 < t.h.size(); ++i) {
      for (double v : t.h[i]) best = std::min(best, std::fabs(v));
    }
  }
  return best;
}

nlohmann::json FitReport::to_json(bool include_history) const {
  nlohmann::json j = {{"objective", objective},     {"empirical_risk", risk},
                      {"penalty", penalty},         {"path_norm", path_norm},
                      {"heldout_mse", heldout_mse}, {"lambda", lambda},
                      {"epochs", epochs},           {"accepted_steps", accepted_steps},
                      {"stop_reason", stop_reason}};
  j["oracle_rhs"] = oracle_rhs ? nlohmann::json(*oracle_rhs) : nlohmann::json(nullptr);
  if (include_history) j["objective_history"] = objective_history;
  return j;
}

FitResult fit(const RegressionConfig& config, const Dataset& data) {
  return fit_from(config, data, Weights::random(config.widths(), config.seed));
}

FitResult fit_from(const RegressionConfig& config, const Dataset& data, Weights w) {
  if (w.widths != config.widths()) throw DimensionError("initial weights do not match the architecture");
  if (data.d != config.d) throw DimensionError("dataset dimension != config d");
  const double lambda = config.resolved_lambda();

  FitReport rep;
  rep.lambda = lambda;
  double obj = objective(w, data, lambda);
  if (!std::isfinite(obj)) throw NumericError("initial objective is not finite");
  const double initial = obj;
  rep.objective_history.push_back(obj);

  double step = config.initial_step;
  rep.stop_reason = "max_epochs";
  for (rep.epochs = 0; rep.epochs < config.max_epochs;) {
    ++rep.epochs;
    const Weights g = objective_gradient(w, data, lambda);
    const double gg = g.dot(g);
    if (gg == 0.0) {
      rep.stop_reason = "zero gradient";
      break;
    }
    bool accepted = false;
    double next_obj = obj;
    Weights cand;
    for (int tries = 0; tries < 80; ++tries) {
      cand = w;
      cand.axpy(-step, g);
      next_obj = objective(cand, data, lambda);
      if (std::isfinite(next_obj) && next_obj <= obj - kArmijo * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      rep.stop_reason = "line search found no descent";
      break;
    }
    if (next_obj > 1e6 * initial) {
      std::ostringstream msg;
      msg << "training diverged: objective " << next_obj << " exceeds 1e6 x initial " << initial;
      throw NumericError(msg.str());
    }
    if (!(next_obj <= obj)) throw NumericError("accepted step increased the objective");
    const double rel = (obj - next_obj) / std::max(std::fabs(obj), 1e-300);
    w = std::move(cand);
    obj = next_obj;
    rep.objective_history.push_back(obj);
    ++rep.accepted_steps;
    step *= 2.0;
    if (rel < 1e-10) {
      rep.stop_reason = "relative improvement below 1e-10";
      break;
    }
  }

  rep.risk = empirical_risk(w, data);
  rep.path_norm = weights_path_norm(w);
  rep.penalty = lambda * rep.path_norm;
  rep.objective = rep.risk + rep.penalty;
  Network net = w.to_network();
  rep.heldout_mse = mc_squared_error(net, config.target, config.holdout, config.seed ^ kHoldoutStream);
  net.set_meta("construction", "regression");
  net.set_meta("lambda", lambda);
  return {std::move(net), std::move(w), std::move(rep)};
}

double mc_squared_error(const Network& candidate, const AnalyticTarget& f0, std::size_t samples,
                        std::uint64_t seed) {
  if (samples == 0) throw Error("Monte Carlo needs at least one sample");
  const std::size_t d = std::size_t(f0.dim);
  if (candidate.input_dim() != d + 1) throw DimensionError("candidate input must be (1, x)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(samples, std::vector<double>(d));
  for (auto& x : pts) {
    for (auto& v : x) v = u(rng);
  }
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  for_blocks(samples, [&](std::size_t b, std::size_t begin, std::size_t end) {
    std::vector<double> in(d + 1);
    in[0] = 1.0;
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      std::copy(pts[i].begin(), pts[i].end(), in.begin() + 1);
      const double r = candidate.eval_scalar(in) - f0(pts[i]);
      s += r * r;
    }
    partial[b] = s;
  });
  double s = 0.0;
  for (double v : partial) s += v;
  return s / double(samples);
}

nlohmann::json OracleRhs::to_json() const {
  return {{"approx_term", approx}, {"penalty_term", penalty}, {"remainder", remainder}, {"total", total}};
}

OracleRhs oracle_rhs(const RegressionConfig& config, const Network& candidate) {
  const auto widths = config.widths();
  OracleRhs o;
  o.approx = mc_squared_error(candidate, config.target, config.holdout, config.seed ^ kHoldoutStream);
  o.penalty = config.resolved_lambda() * path_norm(candidate);
  double hidden = 0.0;
  for (std::size_t i = 1; i + 1 < widths.size(); ++i) hidden += double(widths[i]);
  const double lg = std::log2(double(std::max<std::size_t>(config.n, 1)));
  o.remainder = config.oracle_c * hidden * lg * lg * lg / double(config.n);
  o.total = 2.0 * (o.approx + o.penalty) + o.remainder;
  return o;
}

}  // namespace nnapprox
