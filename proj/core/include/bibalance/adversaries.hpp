#pragma once

// Gambler strategies used to attack house strategies.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bibalance/game.hpp"

namespace bibalance {

using HouseFactory = std::function<std::unique_ptr<HouseStrategy>()>;

// Largest horizon exhaustive_worst_case will enumerate.
inline constexpr int kMaxExhaustiveHorizon = 22;

struct WorstCase {
  std::vector<int> bits;
  LossVector accumulated;
  double loss = 0.0;
  std::uint64_t leaves = 0;
};

// Maximizes game_loss over all 2^T decisive sequences. Returns the
// lexicographically smallest maximizer; losses within 1e-12 relative count as
// ties. Shares each prefix's house state across both continuations.
WorstCase exhaustive_worst_case(const HouseFactory& factory, int horizon);
WorstCase exhaustive_worst_case(const HouseStrategy& prototype);

// The bit whose counterfactual payout, added to its accumulated coordinate,
// is larger. Ties go to 1.
int greedy_decisive_step(OddsPoint r, const LossVector& accumulated);

BetPoint proportional_step(OddsPoint r);

// Last-round override: argmax of the two counterfactual final losses, ties to
// 1. The candidate bit is discarded.
int final_round_rule(int candidate, OddsPoint r, const LossVector& accumulated);

class GreedyGambler final : public GamblerStrategy {
 public:
  double next_bet(const GamblerView& view) override;
  std::string name() const override { return "greedy"; }
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<GreedyGambler>(*this);
  }
};

class ProportionalGambler final : public GamblerStrategy {
 public:
  double next_bet(const GamblerView& view) override;
  std::string name() const override { return "proportional"; }
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<ProportionalGambler>(*this);
  }
};

class ConstantGambler final : public GamblerStrategy {
 public:
  explicit ConstantGambler(double q);
  double next_bet(const GamblerView&) override { return q_; }
  std::string name() const override;
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<ConstantGambler>(*this);
  }

 private:
  double q_;
};

// 0, 1, 0, 1, ...
class AlternatingGambler final : public GamblerStrategy {
 public:
  double next_bet(const GamblerView& view) override;
  std::string name() const override { return "alternating"; }
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<AlternatingGambler>(*this);
  }
};

// Fair coin flips on {0,1}.
class RandomGambler final : public GamblerStrategy {
 public:
  explicit RandomGambler(std::uint64_t seed);
  double next_bet(const GamblerView& view) override;
  std::string name() const override;
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<RandomGambler>(*this);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

// Uniform draws from [0,1], for exercising continuous-bet strategies.
class UniformBetGambler final : public GamblerStrategy {
 public:
  explicit UniformBetGambler(std::uint64_t seed);
  double next_bet(const GamblerView& view) override;
  std::string name() const override { return "uniform-bets"; }
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<UniformBetGambler>(*this);
  }

 private:
  std::mt19937_64 rng_;
};

// Plays a fixed bet sequence. Running past its end is a domain error.
class ReplayGambler final : public GamblerStrategy {
 public:
  explicit ReplayGambler(std::vector<BetPoint> bets, std::string label = "replay");
  double next_bet(const GamblerView& view) override;
  std::string name() const override { return label_; }
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<ReplayGambler>(*this);
  }

  const std::vector<BetPoint>& bets() const noexcept { return bets_; }

 private:
  std::vector<BetPoint> bets_;
  std::string label_;
};

// Plays the worst-case sequence found by exhaustive_worst_case.
std::unique_ptr<GamblerStrategy> make_exhaustive_gambler(
    const HouseStrategy& prototype);

// Replaces the inner gambler's last bet with final_round_rule.
class FinalRoundOverride final : public GamblerStrategy {
 public:
  explicit FinalRoundOverride(std::unique_ptr<GamblerStrategy> inner);
  FinalRoundOverride(const FinalRoundOverride& other);

  double next_bet(const GamblerView& view) override;
  std::string name() const override { return inner_->name() + "+final"; }
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<FinalRoundOverride>(*this);
  }

 private:
  std::unique_ptr<GamblerStrategy> inner_;
};

// Reads q from `in` after printing the round, the odds and both payouts at
// the configured overround. Malformed or out-of-range input re-prompts; end
// of input throws GameAborted.
class InteractiveGambler final : public GamblerStrategy {
 public:
  InteractiveGambler(std::istream& in, std::ostream& out, double overround);
  double next_bet(const GamblerView& view) override;
  std::string name() const override { return "interactive"; }
  std::unique_ptr<GamblerStrategy> clone() const override {
    return std::make_unique<InteractiveGambler>(*this);
  }

 private:
  std::istream* in_;
  std::ostream* out_;
  double overround_;
};

// Parses one line of interactive input. Empty when it is not a number in
// [0,1].
std::optional<double> parse_bet(const std::string& line);

}  // namespace bibalance
