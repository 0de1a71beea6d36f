#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nnapprox/approximators.hpp"
#include "nnapprox/constructions.hpp"
#include "nnapprox/error.hpp"
#include "nnapprox/targets.hpp"

using namespace nnapprox;

namespace {

MonomialPolynomial poly1(std::initializer_list<std::pair<int, double>> terms) {
  MonomialPolynomial p(1);
  for (const auto& [k, a] : terms) p.add_term(MultiIndex{{k}}, a);
  return p;
}

double sup_error_1d(const Network& net, const std::function<double(double)>& f, double lo, double hi,
                    int n, bool open_lo) {
  double worst = 0.0;
  for (int i = open_lo ? 1 : 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    worst = std::max(worst, std::fabs(net.eval_scalar(std::vector<double>{1.0, x}) - f(x)));
  }
  return worst;
}

}  // namespace

TEST(Parameters, GammaAndM) {
  // ceil(ln(1/eps)/delta) and ceil(log2(1/eps))
  EXPECT_EQ(power_series_gamma(std::ldexp(1.0, -6), 0.25), int(std::ceil(4 * 6 * std::log(2.0))));
  EXPECT_EQ(power_series_gamma(std::exp(-1.0), 1.0 / 3.0), 3);
  EXPECT_EQ(eps_to_m(std::ldexp(1.0, -6)), 6);
  EXPECT_EQ(eps_to_m(0.3), 2);
  EXPECT_EQ(eps_to_m(0.9), 1);
  EXPECT_THROW(eps_to_m(0.0), Error);
  EXPECT_THROW(eps_to_m(1.0), Error);
  EXPECT_THROW(power_series_gamma(0.1, 1.5), Error);
}

TEST(Parameters, MonShapeFormulas) {
  const auto b = mon_shape_bounds(6, 3, 2);
  EXPECT_EQ(b.matrices, 2u * 17u + 2u);
  EXPECT_EQ(b.width, 6u * 3u * 8u * 6u);
}

TEST(PowerSeries, TailBoundHolds) {
  // 1/(2 - x) = sum x^k / 2^{k+1}, F = 1
  const double delta = 0.25, hi = 1.0 - delta;
  for (int gamma = 1; gamma <= 40; ++gamma)
    for (int i = 1; i <= 200; ++i) {
      const double x = hi * i / 200.0;
      double partial = 0.0;
      for (int k = 0; k <= gamma; ++k) partial += std::pow(x, k) / std::ldexp(1.0, k + 1);
      EXPECT_LE(std::fabs(1.0 / (2.0 - x) - partial), std::pow(1.0 - delta, gamma) + 1e-15);
    }
}

TEST(PowerSeries, InverseTwoMinusX) {
  const auto series = builtin_series("inv2mx", 1);
  const double eps = std::ldexp(1.0, -6), delta = 0.25;
  const auto res = build_power_series_net(series, eps, delta, MultVariant::Rescaled, 1000);
  const auto& c = res.certificate;
  EXPECT_EQ(c.gamma, power_series_gamma(eps, delta));
  EXPECT_EQ(c.m, 6);
  EXPECT_DOUBLE_EQ(*c.claimed_error, 1.5);
  ASSERT_TRUE(c.measured_error.has_value());
  const double direct =
      sup_error_1d(res.net, [](double x) { return 1.0 / (2.0 - x); }, 0.0, 0.75, 1000, true);
  EXPECT_DOUBLE_EQ(*c.measured_error, direct);
  EXPECT_LT(direct, 1e-2 * *c.claimed_error);
  EXPECT_LE(c.path_norm, *c.path_norm_bound);
  EXPECT_LE(c.num_matrices, c.mon_bounds.matrices + 1);
  EXPECT_LE(c.max_width, c.mon_bounds.width);
  const auto mb = mon_shape_bounds(c.m, c.gamma + 1, 1);
  EXPECT_EQ(c.mon_bounds.matrices, mb.matrices);
  EXPECT_EQ(c.mon_bounds.width, mb.width);
}

TEST(PowerSeries, LiteralBoundOnPathNorm) {
  const auto series = builtin_series("inv2mx", 1);
  for (int e : {4, 6}) {
    const auto res = build_power_series_net(series, std::ldexp(1.0, -e), 0.25, MultVariant::PaperLiteral);
    const int g = res.certificate.gamma;
    EXPECT_DOUBLE_EQ(*res.certificate.path_norm_bound, 144.0 * 2.0 * std::pow(g + 2.0, 5));
    EXPECT_LE(path_norm(res.net), 144.0 * 2.0 * std::pow(g + 2.0, 5));
    EXPECT_DOUBLE_EQ(*res.certificate.claimed_error, 2.0 * std::ldexp(1.0, -e) / 0.0625);
  }
}

TEST(PowerSeries, ZeroAndLinear) {
  const auto zero = build_power_series_net(series_from_polynomial(MonomialPolynomial(1)), 0.1, 0.5,
                                           MultVariant::Rescaled);
  const auto lin = build_power_series_net(series_from_polynomial(poly1({{1, 1.0}})), std::ldexp(1.0, -6),
                                          0.25, MultVariant::Rescaled);
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    EXPECT_EQ(zero.net.eval_scalar(std::vector<double>{1, x}), 0.0);
    EXPECT_NEAR(lin.net.eval_scalar(std::vector<double>{1, x}), x, 1e-11);
  }
}

TEST(PowerSeries, TwoDimensional) {
  const auto series = builtin_series("inv2mx", 2);
  const auto res = build_power_series_net(series, 0.25, 0.5, MultVariant::Rescaled, 21);
  ASSERT_TRUE(res.certificate.measured_error.has_value());
  EXPECT_LE(*res.certificate.measured_error, *res.certificate.claimed_error);
  EXPECT_EQ(res.certificate.measured_points, 21u * 21u);
}

TEST(PowerSeries, Errors) {
  MonomialPolynomial p = poly1({{0, 0.5}, {1, 0.25}});
  auto truncated = series_from_polynomial(p);
  truncated.available_degree = 1;
  EXPECT_THROW(build_power_series_net(truncated, 0.1, 0.5, MultVariant::Rescaled), Error);
  auto overweight = series_from_polynomial(p);
  overweight.abs_sum_bound = 0.5;
  EXPECT_THROW(build_power_series_net(overweight, 0.1, 0.5, MultVariant::Rescaled), Error);
  EXPECT_THROW(build_power_series_net(series_from_polynomial(p), 0.0, 0.5, MultVariant::Rescaled), Error);
  EXPECT_THROW(build_power_series_net(series_from_polynomial(p), 0.1, 1.0, MultVariant::Rescaled), Error);
}

TEST(CoefficientRow, OrderAndDegreeCheck) {
  const Network mon = build_mon(4, 3, 2, MultVariant::Rescaled);
  MonomialPolynomial p(2);
  p.add_term(MultiIndex{{1, 0}}, 2.0);
  p.add_term(MultiIndex{{0, 1}}, -1.0);
  const Network net = append_coefficient_row(mon, p);
  EXPECT_EQ(net.layer(net.num_matrices() - 1).to_rows().front(),
            (std::vector<double>{0, -1, 2, 0, 0, 0}));
  MonomialPolynomial hi(2);
  hi.add_term(MultiIndex{{3, 0}}, 1.0);
  EXPECT_THROW(append_coefficient_row(mon, hi), Error);
  EXPECT_THROW(append_coefficient_row(mon, poly1({{1, 1.0}})), DimensionError);
}

TEST(Cheb, ConstantIsExact) {
  const auto res = build_cheb_net(builtin_target("one", 1), 0.25, MultVariant::Rescaled, 101);
  EXPECT_EQ(*res.certificate.measured_error, 0.0);
}

TEST(Cheb, ProductReproduced) {
  const double eps = std::ldexp(1.0, -8);
  const auto res = build_cheb_net(builtin_target("product", 2), eps, MultVariant::Rescaled, 21);
  const int m = res.certificate.m;
  EXPECT_EQ(m, 8);
  EXPECT_EQ(res.certificate.gamma, 8);
  EXPECT_LE(*res.certificate.measured_error, mon_error_bound(m, m + 1, MultVariant::Rescaled));
}

TEST(Cheb, ExpErrorFallsAsEpsHalves) {
  const AnalyticTarget f = builtin_target("exp-sum", 1);
  double prev = INFINITY;
  for (int e = 2; e <= 7; ++e) {
    const auto res = build_cheb_net(f, std::ldexp(1.0, -e), MultVariant::Rescaled, 1001);
    const double err = *res.certificate.measured_error;
    const int g = res.certificate.gamma;
    const double floor = mon_error_bound(g, g + 1, MultVariant::Rescaled) * res.certificate.coefficient_mass;
    EXPECT_TRUE(err <= prev || err <= floor) << "eps=2^-" << e;
    prev = err;
  }
}

TEST(Cheb, CertificateJson) {
  const auto res = build_cheb_net(builtin_target("exp-sum", 1), std::ldexp(1.0, -4), MultVariant::Rescaled, 51);
  const auto j = res.certificate.to_json();
  for (const char* key : {"params", "claimed_bounds", "measured", "grid_spec"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["params"]["gamma"], 4);
  EXPECT_THROW(build_cheb_net([] {
                 auto t = builtin_target("exp-sum", 1);
                 t.domain = {Interval{-1, 1}};
                 return t;
               }(),
                              0.25),
               Error);
}

TEST(ParamBudget, Counts) {
  const Network one(Activation::abs(), {Matrix(2, 3)});
  EXPECT_EQ(l1_param_budget(one).param_count, 6u);
  const auto mult = l1_param_budget(build_mult(3, MultVariant::PaperLiteral));
  EXPECT_LE(mult.max_abs, 2.0);
  const auto cheb = build_cheb_net(builtin_target("exp-sum", 1), std::ldexp(1.0, -6));
  const auto b = l1_param_budget(cheb.net);
  std::size_t direct = 0, pmax = 0;
  for (const auto& w : cheb.net.weights()) {
    direct += w.rows() * w.cols();
    pmax = std::max({pmax, w.rows(), w.cols()});
  }
  EXPECT_EQ(b.param_count, direct);
  EXPECT_LE(b.param_count, cheb.net.num_matrices() * pmax * pmax);
  EXPECT_TRUE(b.within);
}
