#include <benchmark/benchmark.h>

#include <memory>

#include "cubewalk/cubefunc.hpp"
#include "cubewalk/graycode.hpp"
#include "cubewalk/markov.hpp"
#include "cubewalk/prng.hpp"

using namespace cubewalk;

static void BM_ConstructionB(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto base = std::make_shared<const TransitionSequence>(toTransitions(reflectedGray(n - 2)));
  DecompositionEnumerator en(base, chooseL(n));
  const auto d = *en.next();
  for (auto _ : state) benchmark::DoNotOptimize(constructionB(d));
}
BENCHMARK(BM_ConstructionB)->Arg(5)->Arg(6)->Arg(8);

static void BM_GenerateBalanced(benchmark::State& state) {
  GenerateOptions options;
  options.limit = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(generateBalanced(static_cast<int>(state.range(0)), options));
}
BENCHMARK(BM_GenerateBalanced)->Args({6, 1000})->Args({6, 3003})->Args({7, 10000})->Unit(benchmark::kMillisecond);

static void BM_MixingTime(benchmark::State& state) {
  const auto m = markovOf(buildIterationGraph(builtinProfile(static_cast<char>('a' + state.range(0))).f));
  MixingOptions options;
  options.exactMaxBits = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mixingTime(m, 1e-4, options));
}
BENCHMARK(BM_MixingTime)->ArgName("profile")->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ExactDistance(benchmark::State& state) {
  const auto m = markovOf(buildIterationGraph(builtinProfile('a').f));
  for (auto _ : state) benchmark::DoNotOptimize(exactWorstRowDistance(m, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ExactDistance)->Arg(20)->Arg(40);

static void BM_GeneratorBytes(benchmark::State& state) {
  Generator g(profileConfig(static_cast<char>('a' + state.range(0)), 0, 1));
  std::vector<std::uint8_t> buffer(1 << 16);
  for (auto _ : state) {
    g.fill(buffer);
    benchmark::DoNotOptimize(buffer.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(buffer.size()));
}
BENCHMARK(BM_GeneratorBytes)->ArgName("profile")->Arg(0)->Arg(4);

static void BM_StronglyConnected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = removeCycle(grayToCycle(reflectedGray(n)));
  const auto g = buildIterationGraph(f);
  for (auto _ : state) benchmark::DoNotOptimize(isStronglyConnected(g));
}
BENCHMARK(BM_StronglyConnected)->Arg(8)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
