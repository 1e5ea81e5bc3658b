#pragma once

// Monte Carlo approximation of the expected skeleton strategy: N independent
// copies of the decisive state, each driven by Bernoulli draws of the
// continuous bets, with the per-copy odds averaged.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bibalance/balance.hpp"
#include "bibalance/game.hpp"

namespace bibalance {

struct MCConfig {
  std::int64_t copies = 1000;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::optional<double> delta;
  // Pairs copies (2k, 2k+1) on uniforms (u, 1-u). Off in the reference path.
  bool antithetic = false;

  // Copies actually used for horizon T: when both epsilon and delta are set,
  // at least required_samples(epsilon, delta, T).
  std::int64_t resolved_copies(int horizon) const;
};

// ceil(ln(2T/delta) / (2 eps^2)), at least 1. Needs 0 < eps <= 1/2 and
// 0 < delta < 1.
std::int64_t required_samples(double epsilon, double delta, int horizon);

// Union-bound Hoeffding tail: min(1, 2T exp(-2 N eps^2)).
double deviation_probability_bound(std::int64_t copies, double epsilon,
                                   int horizon);

// (1 + 2 eps (T + sqrt T)) (T + sqrt T); eps must not exceed 1/(2(T+sqrt T)).
double loss_inflation_bound(double epsilon, int horizon);

// Uniform in [0,1) for (seed, copy, round), independent of evaluation order.
double substream_uniform(std::uint64_t seed, std::int64_t copy, int round);

struct MCState {
  std::vector<ValuePair> copies;
  int t = 1;  // round whose odds come next
  int horizon = 1;
  std::uint64_t seed = 0;
  bool antithetic = false;
  std::uint64_t copy_updates = 0;
};

MCState mc_init(const MCConfig& config, int horizon);

// Consumes q_{t} for round state.t and returns the averaged odds for round
// state.t + 1. Deterministic in (seed, inputs).
OddsPoint mc_next_odds(MCState& state, BetPoint q_prev);

class MonteCarloHouse final : public HouseStrategy {
 public:
  MonteCarloHouse(int horizon, const MCConfig& config);

  double next_odds(std::span<const BetPoint> history) override;
  int horizon() const override { return state_.horizon; }
  std::string name() const override { return "mc"; }
  std::unique_ptr<HouseStrategy> clone() const override {
    return std::make_unique<MonteCarloHouse>(*this);
  }

  const MCState& state() const noexcept { return state_; }

 private:
  MCState state_;
  int served_ = 0;
};

}  // namespace bibalance
