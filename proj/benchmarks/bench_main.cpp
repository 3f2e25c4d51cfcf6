#include <benchmark/benchmark.h>

#include <vector>

#include "chebconvex/convexity.hpp"
#include "chebconvex/dinghas.hpp"
#include "chebconvex/divdiff.hpp"
#include "chebconvex/systems.hpp"

namespace cx = chebconvex;

namespace {

std::vector<double> lattice(std::size_t count, double start = -2.0, double gap = 0.5) {
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + gap * double(i));
  return out;
}

void BM_EvaluatePhi(benchmark::State& state) {
  const int n = int(state.range(0));
  auto sys = cx::ChebSystem::poly(n);
  cx::Configuration config(lattice(std::size_t(n)));
  for (auto _ : state) benchmark::DoNotOptimize(cx::evaluate_phi(sys, config).value);
}
BENCHMARK(BM_EvaluatePhi)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_DividedDifference(benchmark::State& state) {
  const int n = int(state.range(0));
  auto ext = cx::ExtendedSystem::with_default_extension(cx::ChebSystem::poly(n));
  auto f = cx::SampledFunction::exp_scale(0.7);
  cx::Configuration config(lattice(std::size_t(n) + 1));
  for (auto _ : state) benchmark::DoNotOptimize(cx::divided_difference(ext, f, config).value);
}
BENCHMARK(BM_DividedDifference)->Arg(2)->Arg(3)->Arg(4);

void BM_Decompose(benchmark::State& state) {
  auto ext = cx::ExtendedSystem::with_default_extension(cx::ChebSystem::poly(2));
  cx::Configuration grid(lattice(8));
  const std::vector<std::size_t> target{0, 3, 7};
  for (auto _ : state) benchmark::DoNotOptimize(cx::decompose(ext, grid, target).coefficients);
}
BENCHMARK(BM_Decompose);

void BM_RefineGeneral(benchmark::State& state) {
  auto ext = cx::ExtendedSystem::with_default_extension(cx::ChebSystem::poly(2));
  auto f = cx::SampledFunction::exp_scale(1.0);
  cx::Configuration start({0.0, 1.0, 2.0});
  cx::RefineOptions opts;
  opts.max_iters = 20;
  for (auto _ : state) benchmark::DoNotOptimize(cx::refine_general(ext, f, start, opts).trace.size());
}
BENCHMARK(BM_RefineGeneral);

void BM_EstimateD(benchmark::State& state) {
  auto ext = cx::ExtendedSystem::with_default_extension(
      cx::ChebSystem::poly(2, cx::Domain::interval(-2.0, 2.0)));
  auto f = cx::SampledFunction::exp_scale(1.0);
  const auto sched = cx::Schedule::for_domain(ext.base().domain());
  for (auto _ : state) benchmark::DoNotOptimize(cx::estimate_D(ext, f, 0.5, sched).estimate);
}
BENCHMARK(BM_EstimateD);

}  // namespace

BENCHMARK_MAIN();
