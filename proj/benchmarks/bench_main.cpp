#include <map>

#include <benchmark/benchmark.h>

#include "feedloop/engine.hpp"
#include "feedloop/graph.hpp"
#include "feedloop/netgen.hpp"
#include "feedloop/recommenders.hpp"

using namespace feedloop;

namespace {

const LabeledDigraph& network(std::size_t n) {
  static std::map<std::size_t, LabeledDigraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_preset(Preset::G1, n, 5.0, 1).graph).first;
  return it->second;
}

void BM_Distance2(benchmark::State& state) {
  const auto& g = network(static_cast<std::size_t>(state.range(0)));
  NodeId u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance2_candidates(g, u));
    u = (u + 7) % static_cast<NodeId>(g.num_nodes());
  }
}
BENCHMARK(BM_Distance2)->Arg(2000)->Arg(20000);

void BM_AdaScores(benchmark::State& state) {
  const auto& g = network(static_cast<std::size_t>(state.range(0)));
  NodeId u = 0;
  for (auto _ : state) {
    const auto c = distance2_candidates(g, u);
    benchmark::DoNotOptimize(ada_scores(g, u, c));
    u = (u + 7) % static_cast<NodeId>(g.num_nodes());
  }
}
BENCHMARK(BM_AdaScores)->Arg(2000)->Arg(20000);

void BM_Salsa(benchmark::State& state) {
  const auto& g = network(static_cast<std::size_t>(state.range(0)));
  NodeId u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(salsa(g, u));
    u = (u + 7) % static_cast<NodeId>(g.num_nodes());
  }
}
BENCHMARK(BM_Salsa)->Arg(2000)->Arg(20000);

void BM_AlsTrain(benchmark::State& state) {
  const auto& g = network(static_cast<std::size_t>(state.range(0)));
  AlsParams p;
  for (auto _ : state) benchmark::DoNotOptimize(als_train(g, p, 1));
}
BENCHMARK(BM_AlsTrain)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Iteration(benchmark::State& state) {
  const auto kind = static_cast<RecommenderKind>(state.range(0));
  SimConfig cfg;
  cfg.recommender = kind;
  auto rec = make_recommender(kind);
  for (auto _ : state) {
    state.PauseTiming();
    auto g = network(2000);
    ExclusionTable ex(g.num_nodes());
    state.ResumeTiming();
    benchmark::DoNotOptimize(run_iteration(g, cfg, *rec, ex, 1, g.num_edges()));
  }
  state.SetLabel(std::string(recommender_name(kind)));
}
BENCHMARK(BM_Iteration)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_BuildPreset(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_preset(Preset::G4, 2000, 5.0, 3));
}
BENCHMARK(BM_BuildPreset)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
