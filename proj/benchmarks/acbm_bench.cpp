#include <benchmark/benchmark.h>

#include <acbm/analysis.hpp>
#include <acbm/verify.hpp>
#include <acbm/zoo.hpp>

namespace {

// Indexed by state.range(0): 0 -> dim 3, 1 -> dim 5, 2 -> dim 7.
const char* const kModels[] = {"solv3-a", "dim5-tr", "dim7-a"};

template <class S>
void BM_LeviCivita(benchmark::State& state) {
  const auto s = acbm::build_structure<S>(acbm::builtin(kModels[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(acbm::levi_civita(s.lie(), s.g()));
  state.SetLabel(kModels[state.range(0)]);
}

template <class S>
void BM_Analyse(benchmark::State& state) {
  const auto s = acbm::build_structure<S>(acbm::builtin(kModels[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(acbm::analyse(s));
  state.SetLabel(kModels[state.range(0)]);
}

template <class S>
void BM_Verify(benchmark::State& state) {
  const auto spec = acbm::builtin(kModels[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(acbm::verify_model<S>(spec));
  state.SetLabel(kModels[state.range(0)]);
}

void BM_RandomPlanes(benchmark::State& state) {
  const auto s = acbm::build_structure<acbm::Rational>(acbm::builtin("dim7-a"));
  for (auto _ : state) benchmark::DoNotOptimize(acbm::random_planes(s, state.range(0), 1));
}

}  // namespace

BENCHMARK_TEMPLATE(BM_LeviCivita, acbm::Rational)->DenseRange(0, 2);
BENCHMARK_TEMPLATE(BM_LeviCivita, double)->DenseRange(0, 2);
BENCHMARK_TEMPLATE(BM_Analyse, acbm::Rational)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Analyse, double)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Verify, acbm::Rational)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Verify, double)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomPlanes)->Arg(20)->Arg(80);
BENCHMARK_MAIN();
