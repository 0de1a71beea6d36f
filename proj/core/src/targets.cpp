#include "nnapprox/targets.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "nnapprox/error.hpp"

namespace nnapprox {

namespace {

double inv_factorial(int k) {
  double v = 1.0;
  for (int i = 2; i <= k; ++i) v /= i;
  return v;
}

}  // namespace

std::vector<std::string> builtin_target_names() {
  return {"inv2mx", "exp-sum", "runge", "product", "square", "one", "zero"};
}

AnalyticTarget builtin_target(std::string_view name, int dim) {
  if (dim < 1) throw Error("target dimension must be >= 1");
  AnalyticTarget t;
  t.dim = dim;
  t.name = std::string(name);
  t.domain.assign(std::size_t(dim), Interval{0.0, 1.0});
  if (name == "inv2mx") {
    t.evaluator = [](std::span<const double> x) {
      double v = 1.0;
      for (double xi : x) v /= (2.0 - xi);
      return v;
    };
    t.sup_bound = 1.0;
  } else if (name == "exp-sum") {
    t.evaluator = [](std::span<const double> x) {
      return std::exp(std::accumulate(x.begin(), x.end(), 0.0));
    };
    t.sup_bound = std::exp(double(dim));
  } else if (name == "runge") {
    t.evaluator = [](std::span<const double> x) {
      double r2 = 0.0;
      for (double xi : x) r2 += xi * xi;
      return 1.0 / (1.0 + 25.0 * r2);
    };
    t.sup_bound = 1.0;
  } else if (name == "product") {
    t.evaluator = [](std::span<const double> x) {
      return std::accumulate(x.begin(), x.end(), 1.0, std::multiplies<>());
    };
    t.sup_bound = 1.0;
  } else if (name == "square") {
    t.evaluator = [](std::span<const double> x) { return x[0] * x[0]; };
    t.sup_bound = 1.0;
  } else if (name == "one") {
    t.evaluator = [](std::span<const double>) { return 1.0; };
    t.sup_bound = 1.0;
  } else if (name == "zero") {
    t.evaluator = [](std::span<const double>) { return 0.0; };
    t.sup_bound = 0.0;
  } else {
    throw Error("unknown target '" + std::string(name) + "'");
  }
  return t;
}

PowerSeries builtin_series(std::string_view name, int dim) {
  if (dim < 1) throw Error("series dimension must be >= 1");
  PowerSeries s;
  s.dim = dim;
  s.name = std::string(name);
  if (name == "inv2mx") {
    s.abs_sum_bound = 1.0;
    s.coefficient = [](const MultiIndex& k) {
      return std::ldexp(1.0, -(k.degree() + int(k.dim())));
    };
  } else if (name == "exp-sum") {
    s.abs_sum_bound = std::exp(double(dim));
    s.coefficient = [](const MultiIndex& k) {
      double v = 1.0;
      for (int ki : k.k) v *= inv_factorial(ki);
      return v;
    };
  } else {
    throw Error("unknown series '" + std::string(name) + "'");
  }
  s.closed_form = builtin_target(name, dim).evaluator;
  return s;
}

PowerSeries series_from_polynomial(const MonomialPolynomial& p, std::string name) {
  auto shared = std::make_shared<const MonomialPolynomial>(p);
  PowerSeries s;
  s.dim = p.dim();
  s.abs_sum_bound = p.abs_coefficient_sum();
  s.coefficient = [shared](const MultiIndex& k) { return shared->coefficient(k); };
  s.closed_form = [shared](std::span<const double> x) { return shared->eval(x); };
  s.name = std::move(name);
  return s;
}

PowerSeries series_from_json(const nlohmann::json& doc) {
  const auto p = MonomialPolynomial::from_json(doc);
  PowerSeries s = series_from_polynomial(p, doc.value("name", std::string("file")));
  if (doc.contains("F")) {
    const double F = doc.at("F").get<double>();
    if (F < s.abs_sum_bound) throw Error("series file: F is below the listed sum |a_k|");
    s.abs_sum_bound = F;
  }
  if (!doc.value("complete", true)) {
    s.available_degree = p.degree();
    s.closed_form = nullptr;
  }
  return s;
}

AnalyticTarget target_from_polynomial(const MonomialPolynomial& p, std::string name) {
  auto shared = std::make_shared<const MonomialPolynomial>(p);
  AnalyticTarget t;
  t.dim = p.dim();
  t.evaluator = [shared](std::span<const double> x) { return shared->eval(x); };
  t.sup_bound = p.abs_coefficient_sum();
  t.domain.assign(std::size_t(p.dim()), Interval{0.0, 1.0});
  t.name = std::move(name);
  return t;
}

AnalyticTarget target_from_series(const PowerSeries& s) {
  if (!s.closed_form) throw Error("series '" + s.name + "' has no closed form");
  AnalyticTarget t;
  t.dim = s.dim;
  t.evaluator = s.closed_form;
  t.sup_bound = s.abs_sum_bound;
  t.domain.assign(std::size_t(s.dim), Interval{0.0, 1.0});
  t.name = s.name;
  return t;
}

}  // namespace nnapprox
