#include <benchmark/benchmark.h>

#include "dhsp/dhsp.hpp"

using namespace dhsp;

static void BM_CountEta(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto k = static_cast<int>(state.range(1));
  Rng rng(1);
  const auto x = BlockLabel::uniform(rng, n, k);
  EtaCounter counter(n);
  for (auto _ : state) benchmark::DoNotOptimize(counter.count(x.values()).data());
}
BENCHMARK(BM_CountEta)->Args({64, 10})->Args({1024, 5})->Args({4096, 6})->Args({1024, 20});

static void BM_SuccessExact(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(success_exact(n, k).p);
}
BENCHMARK(BM_SuccessExact)->Args({64, 3})->Args({16, 5})->Unit(benchmark::kMillisecond);

static void BM_SuccessMc(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(success_mc(1024, 10, 10000, 7, Parallelism{threads}).p);
}
BENCHMARK(BM_SuccessMc)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_PovmBlock(benchmark::State& state) {
  const auto k = static_cast<int>(state.range(0));
  Rng rng(2);
  const auto x = BlockLabel::uniform(rng, 16, k);
  for (auto _ : state) benchmark::DoNotOptimize(povm_block(x).support_dim);
}
BENCHMARK(BM_PovmBlock)->Arg(4)->Arg(8)->Arg(10);

static void BM_NeumarkComplete(benchmark::State& state) {
  const auto k = static_cast<int>(state.range(0));
  Rng rng(3);
  const auto x = BlockLabel::uniform(rng, 32, k);
  for (auto _ : state) benchmark::DoNotOptimize(neumark_complete(x).data());
}
BENCHMARK(BM_NeumarkComplete)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_OutcomeDistribution(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  Rng rng(4);
  const auto x = BlockLabel::uniform(rng, n, 20);
  for (auto _ : state) benchmark::DoNotOptimize(outcome_distribution(x, Hidden::shift(1)).probs.data());
}
BENCHMARK(BM_OutcomeDistribution)->Arg(64)->Arg(1024)->Unit(benchmark::kMicrosecond);

static void BM_CertifyPgm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_dihedral_pgm(4, 4).passed);
}
BENCHMARK(BM_CertifyPgm)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
