// nnapprox: build, check and exercise the absolute-value network constructions.
//
// Exit codes: 0 success, 1 a verification or bound check failed, 2 usage or
// input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nnapprox/approximators.hpp"
#include "nnapprox/chebyshev.hpp"
#include "nnapprox/constructions.hpp"
#include "nnapprox/entropy.hpp"
#include "nnapprox/error.hpp"
#include "nnapprox/network_json.hpp"
#include "nnapprox/regression.hpp"
#include "nnapprox/verify.hpp"

namespace {

using nlohmann::json;
namespace nx = nnapprox;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  bool no_timing = false;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw nx::Error("cannot write '" + g.out + "'");
  f << text << '\n';
}

void emit(const Globals& g, const json& doc) { emit(g, doc.dump(2)); }

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw nx::Error("cannot read '" + path + "'");
  return json::parse(f);
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw nx::Error("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw nx::Error("empty list");
  return out;
}

nx::AnalyticTarget load_target(const std::string& name, int d) {
  if (std::filesystem::exists(name)) {
    return nx::target_from_polynomial(nx::MonomialPolynomial::from_json(read_json_file(name)), name);
  }
  return nx::builtin_target(name, d);
}

nx::PowerSeries load_series(const std::string& name, int d) {
  if (std::filesystem::exists(name)) return nx::series_from_json(read_json_file(name));
  return nx::builtin_series(name, d);
}

// ---- build / verify ---------------------------------------------------------

struct ShapeArgs {
  int m = 1;
  int r = 2;
  int gamma = 2;
  int d = 1;
  int k = 1;
  std::string variant = "paper";
};

void add_shape_options(CLI::App* cmd, ShapeArgs& a) {
  cmd->add_option("--m", a.m, "Squaring depth parameter m")->required();
  cmd->add_option("--r", a.r, "Number of factors (multr)");
  cmd->add_option("--gamma", a.gamma, "Degree bound: monomials with |k| < gamma (mon)");
  cmd->add_option("--d", a.d, "Input dimension (mon)");
  cmd->add_option("--k", a.k, "Number of pairs (pairing)");
  cmd->add_option("--variant", a.variant, "paper | rescaled")->capture_default_str();
}

nx::Network build_kind(const std::string& kind, const ShapeArgs& a) {
  const auto v = nx::parse_variant(a.variant);
  if (kind == "sq") return nx::build_sq(a.m);
  if (kind == "mult") return nx::build_mult(a.m, v);
  if (kind == "multr") return nx::build_multr(a.m, a.r, v);
  if (kind == "mon") return nx::build_mon(a.m, a.gamma, a.d, v);
  if (kind == "pairing") return nx::build_pairing_layer(a.m, a.k, v);
  throw nx::Error("unknown construction '" + kind + "'");
}

int run_build(const Globals& g, const std::string& kind, const ShapeArgs& a) {
  emit(g, nx::network_to_json(build_kind(kind, a)));
  return kOk;
}

struct VerifyArgs {
  ShapeArgs shape;
  std::size_t grid = 0;
  double step = 0.0;
  std::size_t samples = 0;
};

int run_verify(const Globals& g, const std::string& kind, const VerifyArgs& a) {
  const auto v = nx::parse_variant(a.shape.variant);
  std::size_t dim = 1;
  if (kind == "mult") dim = 2;
  if (kind == "multr") dim = std::size_t(a.shape.r);
  if (kind == "mon") dim = std::size_t(a.shape.d);

  const std::size_t default_points = dim == 1 ? 10000 : (dim == 2 ? 201 : 11);
  std::size_t points = a.grid > 0 ? a.grid : default_points;
  if (a.step > 0.0) points = std::size_t(std::llround(1.0 / a.step)) + 1;
  nx::GridSpec grid = nx::claimed_domain_grid(kind, v, dim, points);
  if (a.samples > 0) {
    grid.random_points = a.samples;
    grid.seed = g.seed;
  }

  nx::VerificationReport rep;
  if (kind == "sq") {
    rep = nx::verify_sq(a.shape.m, grid);
  } else if (kind == "mult") {
    rep = nx::verify_mult(a.shape.m, v, grid);
  } else if (kind == "multr") {
    rep = nx::verify_multr(a.shape.m, a.shape.r, v, grid);
  } else if (kind == "mon") {
    rep = nx::verify_mon(a.shape.m, a.shape.gamma, a.shape.d, v, grid);
  } else {
    throw nx::Error("unknown construction '" + kind + "'");
  }
  emit(g, rep.to_json(!g.no_timing));
  return rep.pass ? kOk : kCheckFailed;
}

// ---- eval / path-norm -------------------------------------------------------

int run_eval(const Globals& g, const std::string& path, const std::string& input) {
  const auto net = nx::load_network(path);
  const auto x = parse_list<double>(input);
  const auto y = net.eval(x);
  std::string line;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) line += ',';
    line += nx::format_real(y[i]);
  }
  emit(g, line);
  return kOk;
}

int run_path_norm(const Globals& g, const std::string& path) {
  const auto net = nx::load_network(path);
  const auto pm = nx::path_matrix(net);
  json doc = {{"path_norm", nx::path_norm(net)},
              {"l1_param_norm", nx::l1_param_norm(net)},
              {"per_layer_l1", nx::per_layer_l1(net)},
              {"widths", net.widths()},
              {"param_budget", nx::l1_param_budget(net).to_json()}};
  if (pm.rows() * pm.cols() <= 4096) doc["path_matrix"] = pm.to_rows();
  emit(g, doc);
  return kOk;
}

// ---- entropy ----------------------------------------------------------------

struct EntropyArgs {
  double eps = 1.0;
  std::size_t L = 0;
  std::string p = "1,1";
  double B = 1.0;
  double r = 1.0;
  std::size_t n = 1;
  std::string spec_file;
  std::size_t trials = 1000;
  std::string activation = "abs";
};

nx::EntropyBoundSpec entropy_spec(const EntropyArgs& a) {
  if (!a.spec_file.empty()) return nx::EntropyBoundSpec::from_json(read_json_file(a.spec_file));
  nx::EntropyBoundSpec s;
  s.eps = a.eps;
  s.L = a.L;
  s.p = parse_list<std::size_t>(a.p);
  s.B = a.B;
  s.r = a.r;
  s.n = a.n;
  s.validate();
  return s;
}

int run_entropy_bound(const Globals& g, const EntropyArgs& a) {
  const auto spec = entropy_spec(a);
  json doc = {{"spec", spec.to_json()}, {"network_bound", nx::network_bound(spec)}};
  if (spec.L == 0) doc["linear_bound"] = nx::linear_bound(spec.B, spec.r, spec.eps, spec.p[0]);
  emit(g, doc);
  return kOk;
}

int run_entropy_empirical(const Globals& g, const EntropyArgs& a) {
  const auto spec = entropy_spec(a);
  std::mt19937_64 rng(g.seed);
  const auto pts = nx::sample_points(spec.n, spec.p.front(), spec.r, rng);
  const nx::NetworkSampler sampler(spec.p, spec.B, nx::Activation::from_name(a.activation));
  const auto res = nx::empirical_covering(sampler, pts, spec.eps, a.trials, g.seed + 1);
  const double bound = nx::network_bound(spec);
  const bool ok = res.log2_size <= bound;
  emit(g, json{{"spec", spec.to_json()},
               {"activation", a.activation},
               {"trials", a.trials},
               {"seed", g.seed},
               {"cover_size", res.size},
               {"log2_cover_size", res.log2_size},
               {"max_path_norm", res.max_path_norm},
               {"network_bound", bound},
               {"consistent", ok}});
  return ok ? kOk : kCheckFailed;
}

// ---- approx -----------------------------------------------------------------

struct ApproxArgs {
  std::string source;
  int d = 1;
  double eps = 1.0 / 64;
  double delta = 0.25;
  std::string variant = "rescaled";
  std::size_t grid = 0;
  std::string out_net;
};

std::size_t approx_grid(const ApproxArgs& a) {
  if (a.grid > 0) return a.grid;
  return a.d == 1 ? 1000 : (a.d == 2 ? 51 : 11);
}

int finish_approx(const Globals& g, const ApproxArgs& a, const nx::ApproxResult& res) {
  if (!a.out_net.empty()) nx::save_network(res.net, a.out_net);
  json doc = res.certificate.to_json();
  doc["params"]["source"] = a.source;
  bool ok = true;
  const auto& c = res.certificate;
  if (c.claimed_error && c.measured_error) ok = *c.measured_error <= *c.claimed_error;
  doc["pass"] = ok;
  emit(g, doc);
  return ok ? kOk : kCheckFailed;
}

int run_approx_series(const Globals& g, const ApproxArgs& a) {
  const auto series = load_series(a.source, a.d);
  const auto res = nx::build_power_series_net(series, a.eps, a.delta, nx::parse_variant(a.variant),
                                              approx_grid(a));
  return finish_approx(g, a, res);
}

int run_approx_cheb(const Globals& g, const ApproxArgs& a) {
  const auto target = load_target(a.source, a.d);
  const auto res = nx::build_cheb_net(target, a.eps, nx::parse_variant(a.variant), approx_grid(a));
  return finish_approx(g, a, res);
}

// ---- regress ----------------------------------------------------------------

struct RegressArgs {
  std::string target = "square";
  std::size_t d = 1;
  std::size_t n = 512;
  double noise = 0.1;
  std::string arch = "3,8";
  std::string lambda = "auto";
  double lambda_c = 1.0;
  double oracle_c = 1.0;
  std::size_t epochs = 2000;
  std::size_t holdout = 10000;
  bool history = false;
  std::string out_net;
};

std::vector<std::size_t> parse_arch(const std::string& text) {
  const auto v = parse_list<std::size_t>(text);
  const std::size_t L = v.front();
  if (v.size() == 1 && L == 0) return {};
  if (v.size() == 2) return std::vector<std::size_t>(L, v[1]);
  if (v.size() == L + 1) return {v.begin() + 1, v.end()};
  throw nx::Error("--arch expects L,p (repeated) or L,p_1,...,p_L");
}

int run_regress(const Globals& g, const RegressArgs& a) {
  nx::RegressionConfig c;
  c.n = a.n;
  c.d = a.d;
  c.target = load_target(a.target, int(a.d));
  c.noise_sd = a.noise;
  c.hidden = parse_arch(a.arch);
  if (a.lambda != "auto") c.lambda = parse_list<double>(a.lambda).front();
  c.lambda_c = a.lambda_c;
  c.oracle_c = a.oracle_c;
  c.max_epochs = a.epochs;
  c.seed = g.seed;
  c.holdout = a.holdout;

  const auto data = nx::generate_data(c, g.seed);
  auto res = nx::fit(c, data);
  res.report.oracle_rhs = nx::oracle_rhs(c, res.net).total;
  if (!a.out_net.empty()) nx::save_network(res.net, a.out_net);
  emit(g, json{{"config",
                {{"target", a.target}, {"d", a.d}, {"n", a.n}, {"noise_sd", a.noise},
                 {"widths", c.widths()}, {"lambda", a.lambda}, {"lambda_c", a.lambda_c},
                 {"oracle_c", a.oracle_c}, {"max_epochs", a.epochs}, {"seed", g.seed}}},
               {"report", res.report.to_json(a.history)}});
  return kOk;
}

// ---- cheb -------------------------------------------------------------------

struct ChebArgs {
  int n = 0;
  std::string target = "exp-sum";
  int d = 1;
  int degree = 8;
  int gamma = -1;
};

int run_cheb_coeffs(const Globals& g, const ChebArgs& a) {
  emit(g, json{{"n", a.n}, {"coefficients", nx::cheb_poly_coeffs(a.n)}});
  return kOk;
}

int run_cheb_fit(const Globals& g, const ChebArgs& a) {
  const auto target = load_target(a.target, a.d);
  const auto series = nx::cheb_fit(target, std::vector<int>(std::size_t(a.d), a.degree));
  const auto decay = nx::fit_geometric_decay(series);
  json doc = {{"target", a.target},
              {"degrees", series.degrees()},
              {"coefficients", std::vector<double>(series.coefficients().begin(),
                                                   series.coefficients().end())},
              {"decay", {{"C", decay.constant}, {"rho", decay.rho}, {"used", decay.used}}}};
  if (a.gamma >= 0) doc["monomial"] = nx::cheb_to_monomial(series, a.gamma).to_json();
  emit(g, doc);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Absolute-value network constructions, path norms, entropy bounds and regression"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  // global options may follow the subcommand
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--out", g.out, "Write the report or network here instead of stdout");
  app.add_flag("--no-timing", g.no_timing, "Leave wall-clock fields out of reports");

  std::function<int()> action;

  // build
  auto* build = app.add_subcommand("build", "Emit a construction as network JSON");
  build->require_subcommand(1);
  ShapeArgs build_args;
  for (const char* kind : {"sq", "mult", "multr", "mon", "pairing"}) {
    auto* sub = build->add_subcommand(kind, std::string("Build ") + kind);
    add_shape_options(sub, build_args);
    sub->callback([&, k = std::string(kind)] { action = [&, k] { return run_build(g, k, build_args); }; });
  }

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a network JSON at one input");
  std::string net_path, input;
  eval->add_option("network", net_path, "Network JSON file")->required()->check(CLI::ExistingFile);
  eval->add_option("--input", input, "Comma-separated input, constant coordinate included")->required();
  eval->callback([&] { action = [&] { return run_eval(g, net_path, input); }; });

  // path-norm
  auto* pn = app.add_subcommand("path-norm", "Path norm and parameter norms of a network JSON");
  pn->add_option("network", net_path, "Network JSON file")->required()->check(CLI::ExistingFile);
  pn->callback([&] { action = [&] { return run_path_norm(g, net_path); }; });

  // verify
  auto* verify = app.add_subcommand("verify", "Grid-check a construction against its claimed error");
  verify->require_subcommand(1);
  VerifyArgs verify_args;
  for (const char* kind : {"sq", "mult", "multr", "mon"}) {
    auto* sub = verify->add_subcommand(kind, std::string("Verify ") + kind);
    add_shape_options(sub, verify_args.shape);
    sub->add_option("--grid", verify_args.grid, "Grid points per axis");
    sub->add_option("--step", verify_args.step, "Grid spacing (overrides --grid)");
    sub->add_option("--samples", verify_args.samples, "Uniform random points instead of a grid");
    sub->callback([&, k = std::string(kind)] { action = [&, k] { return run_verify(g, k, verify_args); }; });
  }

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Covering-number bounds");
  entropy->require_subcommand(1);
  EntropyArgs ent;
  auto add_spec = [&ent](CLI::App* sub) {
    sub->add_option("--eps", ent.eps, "Resolution");
    sub->add_option("--L", ent.L, "Number of hidden layers");
    sub->add_option("--p", ent.p, "Widths p_0,...,p_{L+1}");
    sub->add_option("--B", ent.B, "Path-norm cap");
    sub->add_option("--r", ent.r, "Input sup-norm radius");
    sub->add_option("--n", ent.n, "Number of sample points");
    sub->add_option("--spec", ent.spec_file, "Spec JSON {eps, L, p, B, r, n}")->check(CLI::ExistingFile);
  };
  auto* ebound = entropy->add_subcommand("bound", "Evaluate the closed-form bound");
  add_spec(ebound);
  ebound->callback([&] { action = [&] { return run_entropy_bound(g, ent); }; });
  auto* eemp = entropy->add_subcommand("empirical", "Greedy cover of sampled networks vs the bound");
  add_spec(eemp);
  eemp->add_option("--trials", ent.trials, "Sampled networks")->capture_default_str();
  eemp->add_option("--activation", ent.activation, "abs | relu | identity")->capture_default_str();
  eemp->callback([&] { action = [&] { return run_entropy_empirical(g, ent); }; });

  // approx
  auto* approx = app.add_subcommand("approx", "Analytic-function approximants");
  approx->require_subcommand(1);
  ApproxArgs ap;
  auto add_approx = [&ap](CLI::App* sub, const char* source_flag, const char* what) {
    sub->add_option(source_flag, ap.source, what)->required();
    sub->add_option("--d", ap.d, "Input dimension")->capture_default_str();
    sub->add_option("--eps", ap.eps, "Target accuracy in (0,1)")->capture_default_str();
    sub->add_option("--variant", ap.variant, "paper | rescaled")->capture_default_str();
    sub->add_option("--grid", ap.grid, "Grid points per axis for the measured error");
    sub->add_option("--out-net", ap.out_net, "Also write the network JSON here");
  };
  auto* aps = approx->add_subcommand("power-series", "Power-series route");
  add_approx(aps, "--series", "Built-in series (inv2mx, exp-sum) or series JSON file");
  aps->add_option("--delta", ap.delta, "Distance from the upper corner, in (0,1)")->capture_default_str();
  aps->callback([&] { action = [&] { return run_approx_series(g, ap); }; });
  auto* apc = approx->add_subcommand("cheb", "Chebyshev route");
  add_approx(apc, "--target", "Built-in target or polynomial JSON file");
  apc->callback([&] { action = [&] { return run_approx_cheb(g, ap); }; });

  // regress
  auto* regress = app.add_subcommand("regress", "Path-norm penalized least squares on synthetic data");
  RegressArgs ra;
  regress->add_option("--target", ra.target, "Built-in target or polynomial JSON file")->capture_default_str();
  regress->add_option("--d", ra.d, "Input dimension")->capture_default_str();
  regress->add_option("--n", ra.n, "Sample count")->capture_default_str();
  regress->add_option("--noise", ra.noise, "Noise standard deviation")->capture_default_str();
  regress->add_option("--arch", ra.arch, "L,p or L,p_1,...,p_L")->capture_default_str();
  regress->add_option("--lambda", ra.lambda, "auto or a nonnegative number")->capture_default_str();
  regress->add_option("--lambda-c", ra.lambda_c, "Scale of the automatic lambda")->capture_default_str();
  regress->add_option("--oracle-c", ra.oracle_c, "Remainder constant of the oracle bound")->capture_default_str();
  regress->add_option("--epochs", ra.epochs, "Maximum gradient steps")->capture_default_str();
  regress->add_option("--holdout", ra.holdout, "Monte Carlo points for the held-out error")->capture_default_str();
  regress->add_flag("--history", ra.history, "Include the objective history");
  regress->add_option("--out-net", ra.out_net, "Also write the fitted network JSON here");
  regress->callback([&] { action = [&] { return run_regress(g, ra); }; });

  // cheb
  auto* cheb = app.add_subcommand("cheb", "Chebyshev utilities");
  cheb->require_subcommand(1);
  ChebArgs ca;
  auto* cc = cheb->add_subcommand("coeffs", "Monomial coefficients of T_n");
  cc->add_option("--n", ca.n, "Degree")->required();
  cc->callback([&] { action = [&] { return run_cheb_coeffs(g, ca); }; });
  auto* cf = cheb->add_subcommand("fit", "Chebyshev interpolation of a target on [0,1]^d");
  cf->add_option("--target", ca.target, "Built-in target or polynomial JSON file")->capture_default_str();
  cf->add_option("--d", ca.d, "Input dimension")->capture_default_str();
  cf->add_option("--degree", ca.degree, "Per-axis degree")->capture_default_str();
  cf->add_option("--gamma", ca.gamma, "Also convert to monomials up to this total degree");
  cf->callback([&] { action = [&] { return run_cheb_fit(g, ca); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nx::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
