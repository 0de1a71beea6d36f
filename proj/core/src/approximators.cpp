#include "nnapprox/approximators.hpp"

#include <algorithm>
#include <cmath>

#include "nnapprox/error.hpp"

namespace nnapprox {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstructionError(what);
}

void check_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw Error(std::string(name) + " must lie in (0, 1)");
}

int ceil_log2(int r) {
  int q = 0;
  while ((1 << q) < r) ++q;
  return q;
}

double measure(const Network& net, const std::function<double(std::span<const double>)>& f,
               const GridSpec& grid, std::size_t& points) {
  const auto sweep = max_abs_error(
      net, [&f](std::span<const double> x) { return std::vector<double>{f(x)}; }, grid);
  points = sweep.points;
  return sweep.max_error;
}

void fill_shape(ApproxCertificate& c, const Network& net) {
  c.path_norm = path_norm(net);
  c.num_matrices = net.num_matrices();
  c.max_width = net.max_width();
  c.mon_bounds = mon_shape_bounds(c.m, c.gamma + 1, c.d);
  require(c.num_matrices <= c.mon_bounds.matrices + 1,
          "approximant deeper than the monomial bound plus one row");
  require(c.max_width <= c.mon_bounds.width, "approximant wider than the monomial bound");
}

}  // namespace

int power_series_gamma(double eps, double delta) {
  check_unit_interval(eps, "eps");
  check_unit_interval(delta, "delta");
  return int(std::ceil(std::log(1.0 / eps) / delta));
}

int eps_to_m(double eps) {
  check_unit_interval(eps, "eps");
  return std::max(1, int(std::ceil(std::log2(1.0 / eps))));
}

MonShapeBounds mon_shape_bounds(int m, int gamma, int d) {
  MonShapeBounds b;
  b.matrices = std::size_t(ceil_log2(gamma)) * (2 * std::size_t(m) + 5) + 2;
  b.width = 6 * std::size_t(gamma) * (std::size_t(m) + 2) * count_multi_indices(d, gamma);
  return b;
}

nlohmann::json ApproxCertificate::to_json() const {
  const double lg = std::log2(1.0 / eps);
  nlohmann::json params = {{"method", method}, {"variant", nnapprox::to_string(variant)},
                           {"d", d}, {"m", m}, {"gamma", gamma}, {"eps", eps}};
  if (delta) params["delta"] = *delta;

  nlohmann::json claimed = {{"coefficient_mass", coefficient_mass},
                            {"mon_max_matrices", mon_bounds.matrices},
                            {"mon_max_width", mon_bounds.width}};
  claimed["error"] = claimed_error ? nlohmann::json(*claimed_error) : nlohmann::json(nullptr);
  claimed["path_norm"] = path_norm_bound ? nlohmann::json(*path_norm_bound) : nlohmann::json(nullptr);

  nlohmann::json measured = {{"path_norm", path_norm},
                             {"num_matrices", num_matrices},
                             {"max_width", max_width},
                             {"points", measured_points}};
  measured["error"] = measured_error ? nlohmann::json(*measured_error) : nlohmann::json(nullptr);
  if (method == "cheb") {
    // the O(.) shape claims, as ratios against powers of log2(1/eps)
    measured["depth_over_log2"] = double(num_matrices) / (lg * lg);
    measured["width_over_log" + std::to_string(d + 2)] = double(max_width) / std::pow(lg, d + 2);
    measured["path_norm_over_log" + std::to_string(2 * d + 5)] = path_norm / std::pow(lg, 2 * d + 5);
    if (measured_error) measured["error_over_eps"] = *measured_error / eps;
    params["domain_map"] = "x -> 2x - 1 per axis";
  }
  return {{"params", params},
          {"claimed_bounds", claimed},
          {"measured", measured},
          {"grid_spec", domain.to_json()}};
}

Network append_coefficient_row(const Network& mon, const MonomialPolynomial& poly) {
  const auto& meta = mon.meta();
  if (!meta.contains("gamma") || !meta.contains("d")) {
    throw Error("append_coefficient_row: network is not a monomial network");
  }
  const int gamma = meta.at("gamma").get<int>();
  const int d = meta.at("d").get<int>();
  if (poly.dim() != d) throw DimensionError("polynomial dimension does not match the network");
  const auto indices = enumerate_multi_indices(d, gamma);
  std::vector<Matrix::Triplet> t;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const double a = poly.coefficient(indices[i]);
    if (poly.terms().count(indices[i])) ++matched;
    if (a != 0.0) t.push_back({0, i, a});
  }
  if (matched != poly.terms().size()) {
    throw Error("append_coefficient_row: polynomial has terms of degree >= " +
                std::to_string(gamma));
  }
  Network net = append_layer(mon, Matrix::from_triplets(1, indices.size(), std::move(t)));
  for (auto& [key, value] : meta.items()) net.set_meta(key, value);
  net.set_meta("num_matrices", net.num_matrices());
  net.set_meta("widths", net.widths());
  net.set_meta("max_width", net.max_width());
  return net;
}

ApproxResult build_power_series_net(const PowerSeries& series, double eps, double delta,
                                    MultVariant v, std::size_t grid_points) {
  const int gamma = power_series_gamma(eps, delta);
  const int m = eps_to_m(eps);
  if (!series.coefficient) throw Error("series has no coefficient generator");
  if (series.available_degree && *series.available_degree < gamma) {
    throw Error("missing coefficients: series '" + series.name + "' is known up to degree " +
                std::to_string(*series.available_degree) + " but gamma = " +
                std::to_string(gamma));
  }

  MonomialPolynomial partial(series.dim);
  for (const auto& k : enumerate_multi_indices(series.dim, gamma + 1)) {
    const double a = series.coefficient(k);
    if (a != 0.0) partial.add_term(k, a);
  }
  if (partial.abs_coefficient_sum() > series.abs_sum_bound * (1.0 + 1e-12)) {
    throw Error("series '" + series.name + "': partial sum of |a_k| exceeds the declared F");
  }

  ApproxCertificate c;
  c.method = "power-series";
  c.variant = v;
  c.d = series.dim;
  c.m = m;
  c.gamma = gamma;
  c.eps = eps;
  c.delta = delta;
  c.coefficient_mass = series.abs_sum_bound;
  c.claimed_error = (v == MultVariant::PaperLiteral ? 2.0 : 6.0) * series.abs_sum_bound * eps /
                    (delta * delta);

  Network net = append_coefficient_row(build_mon(m, gamma + 1, series.dim, v), partial);
  net.set_meta("construction", "power-series");
  net.set_meta("eps", eps);
  net.set_meta("delta", delta);
  net.set_meta("claimed_error_bound", *c.claimed_error);

  fill_shape(c, net);
  c.path_norm_bound = series.abs_sum_bound * double(series.dim + 1) * mon_path_entry_bound(gamma + 1, v);
  require(c.path_norm <= *c.path_norm_bound * (1.0 + 1e-12),
          "power-series network exceeds its path-norm bound");

  const double hi = v == MultVariant::PaperLiteral ? std::min(0.5, 1.0 - delta) : 1.0 - delta;
  c.domain.box.assign(std::size_t(series.dim), Interval{0.0, hi});
  c.domain.open_lo = true;
  c.domain.points_per_axis = grid_points;
  net.set_meta("claimed_domain", c.domain.to_json());
  if (grid_points > 0 && series.closed_form) {
    c.measured_error = measure(net, series.closed_form, c.domain, c.measured_points);
  }
  return {std::move(net), std::move(c)};
}

ApproxResult build_cheb_net(const AnalyticTarget& target, double eps, MultVariant v,
                            std::size_t grid_points) {
  for (std::size_t a = 0; a < std::size_t(target.dim); ++a) {
    const auto iv = target.axis(a);
    if (iv.lo != 0.0 || iv.hi != 1.0) throw Error("build_cheb_net: target must live on [0,1]^d");
  }
  const int m = eps_to_m(eps);
  const int gamma = m;
  const auto series = cheb_fit(target, std::vector<int>(std::size_t(target.dim), gamma));
  const auto poly = cheb_to_monomial(series, gamma);

  ApproxCertificate c;
  c.method = "cheb";
  c.variant = v;
  c.d = target.dim;
  c.m = m;
  c.gamma = gamma;
  c.eps = eps;
  c.coefficient_mass = poly.abs_coefficient_sum();

  Network net = append_coefficient_row(build_mon(m, gamma + 1, target.dim, v), poly);
  net.set_meta("construction", "cheb");
  net.set_meta("eps", eps);
  net.set_meta("target", target.name);

  fill_shape(c, net);
  c.path_norm_bound = c.coefficient_mass * double(target.dim + 1) * mon_path_entry_bound(gamma + 1, v);
  require(c.path_norm <= *c.path_norm_bound * (1.0 + 1e-12) + 1e-300,
          "Chebyshev network exceeds its path-norm bound");

  const double hi = v == MultVariant::PaperLiteral ? 0.5 : 1.0;
  c.domain.box.assign(std::size_t(target.dim), Interval{0.0, hi});
  c.domain.points_per_axis = grid_points;
  net.set_meta("claimed_domain", c.domain.to_json());
  if (grid_points > 0) {
    c.measured_error = measure(net, target.evaluator, c.domain, c.measured_points);
  }
  return {std::move(net), std::move(c)};
}

nlohmann::json ParamBudget::to_json() const {
  return {{"param_count", param_count}, {"l1_total", l1_total}, {"max_abs_param", max_abs},
          {"count_bound", count_bound}, {"within", within}};
}

ParamBudget l1_param_budget(const Network& net) {
  ParamBudget b;
  for (const auto& w : net.weights()) {
    b.param_count += w.rows() * w.cols();
    b.l1_total += w.l1_norm();
    b.max_abs = std::max(b.max_abs, w.max_abs());
  }
  const std::size_t p = net.max_width();
  b.count_bound = net.num_matrices() * p * p;
  b.within = b.param_count <= b.count_bound;
  return b;
}

}  // namespace nnapprox
