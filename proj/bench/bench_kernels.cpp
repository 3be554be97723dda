#include <benchmark/benchmark.h>

#include "tracesys/kernels.hpp"
#include "tracesys/probability.hpp"

using namespace tracesys;

namespace {

ConcurrentSystem m1() {
  std::vector<std::string> letters{"a0", "a1", "a2", "a3", "a4"};
  std::vector<std::pair<Letter, Letter>> pairs;
  for (Letter i = 0; i < 5; ++i) {
    for (Letter j = i + 2; j < 5; ++j) pairs.emplace_back(i, j);
  }
  return ConcurrentSystem::single_state(TraceMonoid::build(letters, pairs));
}

ConcurrentSystem petri() {
  const auto m = TraceMonoid::build({"a", "b", "c", "d"}, std::vector<std::pair<std::string, std::string>>{{"a", "d"}, {"b", "d"}});
  return ConcurrentSystem::build(m, {"α0", "α1"},
                                 {{"α0", "a", "α0"}, {"α0", "b", "α1"}, {"α0", "d", "α0"},
                                  {"α1", "c", "α0"}, {"α1", "d", "α1"}});
}

void BM_ExecutionCountsSerial(benchmark::State& state) {
  const auto s = m1();
  for (auto _ : state) benchmark::DoNotOptimize(execution_counts_serial(s, static_cast<int>(state.range(0))));
}

void BM_ExecutionCountsParallel(benchmark::State& state) {
  const auto s = m1();
  for (auto _ : state) benchmark::DoNotOptimize(execution_counts_parallel(s, static_cast<int>(state.range(0))));
}

void BM_FirstNodesSerial(benchmark::State& state) {
  const auto chain = markov_chain(uniform_measure(petri()).valuation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_first_nodes_serial(chain, 0, static_cast<std::size_t>(state.range(0)), 1));
  }
}

void BM_FirstNodesParallel(benchmark::State& state) {
  const auto chain = markov_chain(uniform_measure(petri()).valuation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_first_nodes_parallel(chain, 0, static_cast<std::size_t>(state.range(0)), 1));
  }
}

void BM_BatchSerial(benchmark::State& state) {
  const auto chain = markov_chain(uniform_measure(petri()).valuation);
  for (auto _ : state) benchmark::DoNotOptimize(sample_batch_serial(chain, 0, 64, static_cast<std::size_t>(state.range(0)), 1));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto chain = markov_chain(uniform_measure(petri()).valuation);
  for (auto _ : state) benchmark::DoNotOptimize(sample_batch_parallel(chain, 0, 64, static_cast<std::size_t>(state.range(0)), 1));
}

}  // namespace

BENCHMARK(BM_ExecutionCountsSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExecutionCountsParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FirstNodesSerial)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FirstNodesParallel)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchSerial)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
