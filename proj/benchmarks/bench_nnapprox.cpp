#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "nnapprox/approximators.hpp"
#include "nnapprox/chebyshev.hpp"
#include "nnapprox/constructions.hpp"
#include "nnapprox/entropy.hpp"
#include "nnapprox/regression.hpp"
#include "nnapprox/targets.hpp"

using namespace nnapprox;

static void BM_BuildSq(benchmark::State& state) {
  const int m = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_sq(m));
}
BENCHMARK(BM_BuildSq)->Arg(4)->Arg(8)->Arg(16);

static void BM_BuildMon(benchmark::State& state) {
  const int gamma = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_mon(8, gamma, 2, MultVariant::Rescaled));
}
BENCHMARK(BM_BuildMon)->Arg(3)->Arg(6)->Arg(10);

// one forward pass through Mon(m, 6, 2)
static void BM_EvalMon(benchmark::State& state) {
  const Network net = build_mon(int(state.range(0)), 6, 2, MultVariant::Rescaled);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x{1.0, u(rng), u(rng)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.eval(x));
    x[1] = u(rng);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EvalMon)->Arg(4)->Arg(8)->Arg(12);

static void BM_PathNormMultr(benchmark::State& state) {
  const Network net = build_multr(8, int(state.range(0)), MultVariant::PaperLiteral);
  for (auto _ : state) benchmark::DoNotOptimize(path_norm(net));
}
BENCHMARK(BM_PathNormMultr)->Arg(2)->Arg(8)->Arg(16);

static void BM_ChebFitExp2d(benchmark::State& state) {
  const auto f = builtin_target("exp-sum", 2);
  const int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cheb_fit(f, {n, n}));
}
BENCHMARK(BM_ChebFitExp2d)->Arg(8)->Arg(16)->Arg(32);

static void BM_PowerSeriesNet(benchmark::State& state) {
  const auto s = builtin_series("inv2mx", 1);
  const double eps = std::ldexp(1.0, -int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_power_series_net(s, eps, 0.25, MultVariant::Rescaled));
}
BENCHMARK(BM_PowerSeriesNet)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_GreedyCover(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto pts = sample_points(16, 2, 1.0, rng);
  const NetworkSampler sampler({2, 3, 1}, 1.0, Activation::abs());
  for (auto _ : state)
    benchmark::DoNotOptimize(empirical_covering(sampler, pts, 0.1, std::size_t(state.range(0)), 7));
}
BENCHMARK(BM_GreedyCover)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_RiskGradient(benchmark::State& state) {
  RegressionConfig c;
  c.n = std::size_t(state.range(0));
  c.target = builtin_target("square", 1);
  c.hidden = {8, 8, 8};
  const auto data = generate_data(c, 1);
  const Weights w = Weights::random(c.widths(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(risk_gradient(w, data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RiskGradient)->Arg(128)->Arg(1024);
BENCHMARK_MAIN();
