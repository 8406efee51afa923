// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "amalgam/fock.hpp"
#include "amalgam/reference.hpp"
#include "fixtures.hpp"

using namespace amalgam;

namespace {

void BM_Delta(benchmark::State& state) {
  const auto spec = fixtures::sl2z();
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hyperbolicity_delta(*spec, radius));
}

void BM_DeltaReference(benchmark::State& state) {
  const auto spec = fixtures::sl2z();
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::hyperbolicity_delta(*spec, radius));
}

void BM_Stationarity(benchmark::State& state) {
  const auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 1});
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_stationarity(*spec, sol, depth));
}

void BM_StationarityReference(benchmark::State& state) {
  const auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 1});
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::verify_stationarity(*spec, sol, depth));
}

void BM_Walk(benchmark::State& state) {
  const auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_walk(*spec, sol.mu, 2000, horizon, 42));
  state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_WalkReference(benchmark::State& state) {
  const auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::random_walk(*spec, sol.mu, 2000, horizon, 42));
  state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_FockRelations(benchmark::State& state) {
  const TruncatedFock fock(fixtures::s4s4(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_relations(fock));
}

}  // namespace

BENCHMARK(BM_Delta)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaReference)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Stationarity)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StationarityReference)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Walk)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WalkReference)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FockRelations)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
