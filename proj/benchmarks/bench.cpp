#include <benchmark/benchmark.h>

#include "fullproj/blocking.hpp"
#include "fullproj/construct.hpp"
#include "fullproj/ifs.hpp"
#include "fullproj/search.hpp"
#include "fullproj/trace.hpp"

using namespace fullproj;

namespace {

const Certificate& ten() {
  static const Certificate cert = std::get<Certificate>(search_pattern(10, 1000000, 1));
  return cert;
}

void BM_EnumerateTraces(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_traces_2d(state.range(0)).size());
}
BENCHMARK(BM_EnumerateTraces)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_EnumerateTracesByMoves(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_traces_2d_by_moves(state.range(0)).size());
}
BENCHMARK(BM_EnumerateTracesByMoves)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_BlockingByTraces(benchmark::State& state) {
  const auto family = enumerate_traces_2d(10);
  for (auto _ : state) benchmark::DoNotOptimize(verify_blocking_by_traces(ten().pattern, family));
}
BENCHMARK(BM_BlockingByTraces);

void BM_BlockingByTangents(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_blocking_by_tangents(ten().pattern));
}
BENCHMARK(BM_BlockingByTangents)->Unit(benchmark::kMillisecond);

void BM_SearchPattern(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(search_pattern(state.range(0), 1000000, 1).index());
}
BENCHMARK(BM_SearchPattern)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SumsetLatticeAvoidance(benchmark::State& state) {
  const IfsSystem sys = IfsSystem::from_pattern(ten().pattern);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sumset_lattice_avoidance(sys, ten().avoidance, depth));
}
BENCHMARK(BM_SumsetLatticeAvoidance)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_FindAvoidingLine(benchmark::State& state) {
  const CellSet k = iterate(IfsSystem::from_pattern(ten().pattern), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_avoiding_line(k).has_value());
}
BENCHMARK(BM_FindAvoidingLine)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GenericRefine(benchmark::State& state) {
  const CellSet k(2, 3, {{0, 0}, {1, 1}, {2, 0}, {2, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(generic_refine(k, ten().pattern).size());
}
BENCHMARK(BM_GenericRefine)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
