#include <benchmark/benchmark.h>

#include "epstein/distrib.hpp"
#include "epstein/eval.hpp"
#include "epstein/randmodel.hpp"
#include "epstein/specfun.hpp"
#include "epstein/zeros.hpp"

using namespace epstein;

namespace {

EvalConfig height(double t_max) {
  EvalConfig cfg;
  cfg.t_max = t_max;
  return cfg;
}

void BM_TailIntegral(benchmark::State& state) {
  const cplx s(0.8, static_cast<double>(state.range(0)));
  const cplx z(3.0, 0.9 * s.imag());
  for (auto _ : state) benchmark::DoNotOptimize(tail_integral(s, z, state.range(1) != 0));
}
BENCHMARK(BM_TailIntegral)->Args({10, 0})->Args({1000, 0})->Args({1000, 1});

void BM_EpsteinEval(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  const EpsteinFunction E(QuadForm{1, 0, 5}, height(t + 1));
  for (auto _ : state) benchmark::DoNotOptimize(E.eval(cplx(0.8, t)));
}
BENCHMARK(BM_EpsteinEval)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_FieldEvaluateAll(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  const Field F(-20, height(t + 1));
  for (auto _ : state) benchmark::DoNotOptimize(F.evaluate_all(cplx(0.8, t), 1e-12, true));
}
BENCHMARK(BM_FieldEvaluateAll)->Arg(100)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_SampleLVector(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  const Field F(-20, height(t + 1));
  const LSampler S(F, QuadForm{1, 0, 5});
  for (auto _ : state) benchmark::DoNotOptimize(S.sample(0.8, t));
}
BENCHMARK(BM_SampleLVector)->Arg(150)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_RandomModelLogE(benchmark::State& state) {
  static const QuadraticField F = QuadraticField::build(-20);
  const RandomModel M(F, QuadForm{1, 0, 5}, 10000);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(M.log_abs_E({0.8}, state.range(0), seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RandomModelLogE)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_WindingCount(benchmark::State& state) {
  const EpsteinFunction E(QuadForm{1, 0, 5});
  for (auto _ : state) benchmark::DoNotOptimize(winding_count(Rectangle{0.6, 0.9, 30.0, 60.0}, E));
}
BENCHMARK(BM_WindingCount)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
