// Serial references against the OpenMP kernels. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "jacobi/enumeration.hpp"
#include "jacobi/reduction.hpp"
#include "jacobi/relations.hpp"

using namespace jacobi;

namespace {

SkeletonPtr skeleton_for(int64_t which) { return make_skeleton(which == 0 ? "interval" : "interval,circle"); }

void BM_enumerate_serial(benchmark::State& state) {
  auto sk = skeleton_for(state.range(1));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes_serial({sk, n}));
}

void BM_enumerate_parallel(benchmark::State& state) {
  auto sk = skeleton_for(state.range(1));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes({sk, n}));
}

void BM_relations_serial(benchmark::State& state) {
  auto sk = skeleton_for(0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_relations_serial(sk, n));
}

void BM_relations_parallel(benchmark::State& state) {
  auto sk = skeleton_for(0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_relations(sk, n));
}

std::vector<Diagram> corpus(int n) {
  auto sk = skeleton_for(0);
  std::vector<Diagram> out;
  for (const auto& c : enumerate_classes({sk, n, kFilterNonzero})) {
    out.push_back(diagram_from_digest(sk, c.canonical.digest));
  }
  return out;
}

void BM_reduce_all_serial(benchmark::State& state) {
  auto inputs = corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_all_serial(inputs));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(inputs.size()));
}

void BM_reduce_all_parallel(benchmark::State& state) {
  auto inputs = corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_all(inputs));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(inputs.size()));
}

}  // namespace

BENCHMARK(BM_enumerate_serial)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_parallel)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_relations_serial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_relations_parallel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reduce_all_serial)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reduce_all_parallel)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
