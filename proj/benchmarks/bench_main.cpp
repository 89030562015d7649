#include <benchmark/benchmark.h>

#include "svrcsp/bnc.hpp"
#include "svrcsp/cuts.hpp"
#include "svrcsp/generate.hpp"
#include "svrcsp/model.hpp"

namespace {

using namespace svrcsp;

Instance bench_instance(std::uint64_t seed) {
  GenSpec spec = preset("desk");
  spec.seed = seed;
  return generate(spec);
}

void BM_BuildGraphs(benchmark::State& state) {
  const Instance inst = bench_instance(1);
  const Flavor flavor = static_cast<Flavor>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_bundle(inst, flavor));
  }
}
BENCHMARK(BM_BuildGraphs)
    ->Arg(static_cast<int>(Flavor::LT))
    ->Arg(static_cast<int>(Flavor::LTC))
    ->Arg(static_cast<int>(Flavor::LTR));

void BM_BuildModel(benchmark::State& state) {
  const Instance inst = bench_instance(1);
  const Flavor flavor = static_cast<Flavor>(state.range(0));
  const GraphBundle graphs = build_bundle(inst, flavor);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_model(inst, graphs, {flavor}));
  }
}
BENCHMARK(BM_BuildModel)
    ->Arg(static_cast<int>(Flavor::LT))
    ->Arg(static_cast<int>(Flavor::LTC))
    ->Arg(static_cast<int>(Flavor::LTR));

void BM_RootRelaxation(benchmark::State& state) {
  const Instance inst = bench_instance(1);
  const Flavor flavor = static_cast<Flavor>(state.range(0));
  const GraphBundle graphs = build_bundle(inst, flavor);
  const MilpModel model = build_model(inst, graphs, {flavor});
  const StandardLp lp = to_standard_lp(lp_relaxation(model));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp(lp));
  }
}
BENCHMARK(BM_RootRelaxation)
    ->Arg(static_cast<int>(Flavor::LT))
    ->Arg(static_cast<int>(Flavor::LTC))
    ->Arg(static_cast<int>(Flavor::LTR));

void BM_GenerateCuts(benchmark::State& state) {
  const Instance inst = bench_instance(1);
  const GraphBundle graphs = build_bundle(inst, Flavor::LT);
  const MilpModel model = build_model(inst, graphs, {Flavor::LT});
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_all(model));
  }
}
BENCHMARK(BM_GenerateCuts);

void BM_Separate(benchmark::State& state) {
  const Instance inst = bench_instance(1);
  const GraphBundle graphs = build_bundle(inst, Flavor::LT);
  const MilpModel model = build_model(inst, graphs, {Flavor::LT});
  CutPool pool;
  pool.add_all(gen_all(model));
  const LpOutcome root = solve_lp(to_standard_lp(lp_relaxation(model)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(separate(pool, root.x));
  }
}
BENCHMARK(BM_Separate);

}  // namespace

BENCHMARK_MAIN();
