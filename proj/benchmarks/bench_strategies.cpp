#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bibalance/adversaries.hpp"
#include "bibalance/blackwell.hpp"
#include "bibalance/monte_carlo.hpp"
#include "bibalance/strategies.hpp"

using namespace bibalance;

namespace {

void BM_OptimalGame(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    OptimalDecisiveHouse house(T);
    RandomGambler g(1);
    benchmark::DoNotOptimize(game_loss(play_game(house, g, GameConfig(T))));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_OptimalGame)->Arg(1000)->Arg(100000);

void BM_ExpectedSkeletonGame(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ExpectedSkeletonHouse house(T);
    UniformBetGambler g(2);
    benchmark::DoNotOptimize(game_loss(play_game(house, g, GameConfig(T))));
  }
}
BENCHMARK(BM_ExpectedSkeletonGame)->Arg(8)->Arg(12)->Arg(16);

void BM_MonteCarloStep(benchmark::State& state) {
  MCConfig config;
  config.copies = state.range(0);
  config.seed = 3;
  const int T = 64;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto _ : state) {
    MCState s = mc_init(config, T);
    for (int t = 1; t < T; ++t) benchmark::DoNotOptimize(mc_next_odds(s, BetPoint(u(rng))));
  }
  state.SetItemsProcessed(state.iterations() * (T - 1) * state.range(0));
}
BENCHMARK(BM_MonteCarloStep)->Arg(1000)->Arg(7490);

void BM_BlackwellGame(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BlackwellHouse house(T);
    GreedyGambler g;
    benchmark::DoNotOptimize(game_loss(play_game(house, g, GameConfig(T))));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_BlackwellGame)->Arg(512)->Arg(4096);

void BM_ExhaustiveOptimal(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_worst_case(OptimalDecisiveHouse(T)).loss);
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << T));
}
BENCHMARK(BM_ExhaustiveOptimal)->Arg(10)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
