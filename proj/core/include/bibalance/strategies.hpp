#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bibalance/balance.hpp"
#include "bibalance/game.hpp"

namespace bibalance {

// Running state of the optimal decisive strategy: (a, b) is the value pair
// (V^0, V^1) after t-1 observed bets, t is the round whose odds come next.
struct DecisiveState {
  double a = 0.0;
  double b = 0.0;
  int t = 1;
  int horizon = 1;

  int remaining() const noexcept { return horizon - t + 1; }
  ValuePair value() const noexcept { return {a, b}; }
};

// a = b = T + sqrt(T), t = 1. The first odds are 1/2.
DecisiveState optimal_decisive_init(int horizon);

// Consumes the bet of round s.t and returns the state for round s.t+1 together
// with its odds. Throws DecisiveDomainError for q_prev outside {0,1}.
std::pair<DecisiveState, OddsPoint> optimal_decisive_step(DecisiveState s,
                                                          int q_prev);
std::pair<DecisiveState, OddsPoint> optimal_decisive_step(DecisiveState s,
                                                          BetPoint q_prev);

// Cap on the number of non-decisive bets the exact expectation will branch on.
inline constexpr int kMaxExactBranchingBets = 24;
// Branches whose Bernoulli path weight falls below this are dropped.
inline constexpr double kPruneWeight = 1e-30;

// Expected skeleton odds E[r_t(X^{t-1})] with X_i ~ Ber(q_i) independent,
// summed exactly over the 2^{#non-decisive} reachable decisive histories.
// Decisive bets do not branch. Throws CapacityError past the guard.
double expected_skeleton_odds(std::span<const BetPoint> history, int horizon);

// Krichevsky-Trofimov: (1/2 + #ones) / t. Decisive histories only.
OddsPoint kt_baseline_odds(std::span<const BetPoint> history);

OddsPoint uniform_baseline_odds(std::span<const BetPoint> history);

// The optimal decisive strategy wrapped as a house. Rejects non-decisive bets.
class OptimalDecisiveHouse final : public HouseStrategy {
 public:
  explicit OptimalDecisiveHouse(int horizon);

  double next_odds(std::span<const BetPoint> history) override;
  int horizon() const override { return state_.horizon; }
  std::string name() const override { return "optimal-decisive"; }
  std::unique_ptr<HouseStrategy> clone() const override {
    return std::make_unique<OptimalDecisiveHouse>(*this);
  }

  const DecisiveState& state() const noexcept { return state_; }

 private:
  DecisiveState state_;
  int served_ = 0;
};

// The optimal strategy extended to continuous bets by averaging over Bernoulli
// realizations. Keeps the weighted support of reachable decisive states, so a
// decisive game costs O(1) per round and matches the decisive strategy bit for bit.
class ExpectedSkeletonHouse final : public HouseStrategy {
 public:
  explicit ExpectedSkeletonHouse(int horizon, std::string name = "expected");

  double next_odds(std::span<const BetPoint> history) override;
  int horizon() const override { return horizon_; }
  std::string name() const override { return name_; }
  std::unique_ptr<HouseStrategy> clone() const override {
    return std::make_unique<ExpectedSkeletonHouse>(*this);
  }

  std::size_t support_size() const noexcept { return support_.size(); }

 private:
  struct Branch {
    ValuePair value;
    double weight;
  };

  void absorb(BetPoint q);

  int horizon_;
  std::string name_;
  int rounds_served_ = 0;
  int branching_bets_ = 0;
  std::vector<Branch> support_;
};

class KtHouse final : public HouseStrategy {
 public:
  explicit KtHouse(int horizon) : horizon_(horizon) {}

  double next_odds(std::span<const BetPoint> history) override;
  int horizon() const override { return horizon_; }
  std::string name() const override { return "kt"; }
  std::unique_ptr<HouseStrategy> clone() const override {
    return std::make_unique<KtHouse>(*this);
  }

 private:
  int horizon_;
};

class UniformHouse final : public HouseStrategy {
 public:
  explicit UniformHouse(int horizon) : horizon_(horizon) {}

  double next_odds(std::span<const BetPoint> history) override;
  int horizon() const override { return horizon_; }
  std::string name() const override { return "uniform"; }
  std::unique_ptr<HouseStrategy> clone() const override {
    return std::make_unique<UniformHouse>(*this);
  }

 private:
  int horizon_;
};

}  // namespace bibalance
