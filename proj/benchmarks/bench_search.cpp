#include <benchmark/benchmark.h>

#include "weighwright/composition.hpp"
#include "weighwright/search.hpp"

using namespace weighwright;

static void BM_SolveExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto t = solve(SearchProblem::exact(n, d));
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SolveExact)->Args({3, 2})->Args({3, 3})->Args({4, 3})->Args({5, 4})->Unit(benchmark::kMillisecond);

static void BM_SolveSorting(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto t = solve(SearchProblem::sorting(n, d, d - 1));
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SolveSorting)->Args({4, 3})->Args({5, 4})->Args({6, 4})->Unit(benchmark::kMillisecond);

static void BM_SearchOptions(benchmark::State& state) {
  SearchOptions o;
  o.memoize = state.range(0) != 0;
  o.symmetry_filter = state.range(1) != 0;
  for (auto _ : state) {
    auto t = solve(SearchProblem::exact(4, 3), o);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SearchOptions)->ArgNames({"memo", "symmetry"})->Args({1, 1})->Args({0, 1})->Args({1, 0})->Unit(benchmark::kMillisecond);

static void BM_Splice(benchmark::State& state) {
  const auto f = eleven_coin_tree(Semantics::Exact);
  for (auto _ : state) {
    auto r = extend_by_three(*f, {12, 13, 14});
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Splice)->Unit(benchmark::kMillisecond);

static void BM_Plan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  eleven_coin_tree(Semantics::SortClasses);
  spliced_tree(Semantics::SortClasses);
  for (auto _ : state) {
    auto p = plan(n, Semantics::SortClasses);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_Plan)->Arg(25)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
