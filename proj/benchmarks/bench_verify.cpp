#include <benchmark/benchmark.h>

#include <random>

#include "weighwright/composition.hpp"
#include "weighwright/plan_runner.hpp"
#include "weighwright/repair.hpp"
#include "weighwright/strategy_table.hpp"
#include "weighwright/verify.hpp"

using namespace weighwright;

static void BM_ImportTable(benchmark::State& state) {
  for (auto _ : state) {
    auto t = builtin_table("alg1");
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_ImportTable)->Unit(benchmark::kMillisecond);

static void BM_VerifyEleven(benchmark::State& state) {
  const auto tree = eleven_coin_tree(Semantics::SortClasses);
  for (auto _ : state) {
    auto r = verify_tree(*tree, Semantics::SortClasses, VerifyOptions::eleven_coin());
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * 2048);
}
BENCHMARK(BM_VerifyEleven)->Unit(benchmark::kMillisecond);

static void BM_VerifySpliced(benchmark::State& state) {
  const auto spliced = spliced_tree(Semantics::Exact);
  for (auto _ : state) {
    auto r = verify_tree(spliced->tree, Semantics::Exact);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * 16384);
}
BENCHMARK(BM_VerifySpliced)->Unit(benchmark::kMillisecond);

static void BM_RepairTable(benchmark::State& state) {
  const auto table = *builtin_table("alg2");
  const DecisionTree raw = table_to_tree(table, BuildMode::Lenient);
  const auto report = verify_tree(raw, Semantics::SortClasses, VerifyOptions::eleven_coin());
  RepairOptions ro;
  ro.uniform_deadline = 6;
  ro.gamma_depth = 6;
  for (auto _ : state) {
    auto r = repair_tree(raw, Semantics::SortClasses, report, ro);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_RepairTable)->Unit(benchmark::kMillisecond);

static void BM_SimulatePlan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = std::make_shared<const CompositePlan>(plan(n, Semantics::SortClasses));
  std::mt19937_64 rng(1);
  std::vector<char> fake(static_cast<std::size_t>(n) + 1, 0);
  for (auto _ : state) {
    for (int c = 1; c <= n; ++c) fake[static_cast<std::size_t>(c)] = static_cast<char>(rng() & 1U);
    auto s = simulate_plan(p, fake);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_SimulatePlan)->Arg(25)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
