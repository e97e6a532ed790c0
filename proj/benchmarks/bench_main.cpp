#include <benchmark/benchmark.h>

#include <string>

#include "hvalab/builders.hpp"
#include "hvalab/langlab.hpp"
#include "hvalab/transforms.hpp"

using namespace hvalab;

namespace {

MachineSpec named(std::string_view n) { return example(*ExampleName::parse(n)); }

std::string pow_word(long n) { return std::string(std::size_t{1} << n, 'a') + std::string(n, 'b'); }

}  // namespace

static void BM_RunDeterministicPowR(benchmark::State& state) {
  const MachineSpec m = named("POW_r");
  const std::string w = pow_word(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_deterministic(m, w));
  state.SetComplexityN(static_cast<long>(w.size()));
}
BENCHMARK(BM_RunDeterministicPowR)->DenseRange(4, 10, 2)->Complexity();

static void BM_RunNondeterministicLeq(benchmark::State& state) {
  const MachineSpec m = named("LEQ");
  const std::string w = std::string(state.range(0), 'a') + std::string(state.range(0), 'b');
  for (auto _ : state) benchmark::DoNotOptimize(run_nondeterministic(m, w));
}
BENCHMARK(BM_RunNondeterministicLeq)->RangeMultiplier(2)->Range(4, 64);

static void BM_AbStarEnumerate(benchmark::State& state) {
  const MachineSpec m = named("AB_STAR");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_accepted(m, state.range(0)));
}
BENCHMARK(BM_AbStarEnumerate)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_RemoveEndmarker(benchmark::State& state) {
  const MachineSpec m = named("POW_r");
  for (auto _ : state) benchmark::DoNotOptimize(remove_endmarker(m));
}
BENCHMARK(BM_RemoveEndmarker);

static void BM_FiniteLanguageVa(benchmark::State& state) {
  std::set<std::string> words;
  for (const auto& w : enumerate_strings({'1', '2'}, 3))
    if (!w.empty() && words.size() < static_cast<std::size_t>(state.range(0))) words.insert(w);
  const MachineSpec m = finite_language_va(words);
  for (auto _ : state) benchmark::DoNotOptimize(accepts(m, "212"));
  state.counters["dimension"] = static_cast<double>(m.dimension);
}
BENCHMARK(BM_FiniteLanguageVa)->DenseRange(1, 5);

static void BM_Tensor(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  Matrix a(k, k), b(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      a(i, j) = Rational(static_cast<long>(i + j), static_cast<long>(j + 1));
      b(i, j) = Rational(static_cast<long>(i) - static_cast<long>(j), 3);
    }
  for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(BM_Tensor)->DenseRange(2, 8, 2);
BENCHMARK_MAIN();
