#pragma once

// Binary online bookmaking game: per-round losses, the sequential protocol
// that couples a house strategy with a gambler strategy, and the resulting
// transcript.

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bibalance {

// Probability the house assigns to outcome 1. Strictly interior so both
// payouts 1/r and 1/(1-r) are finite.
class OddsPoint {
 public:
  explicit OddsPoint(double r);

  double value() const noexcept { return r_; }
  double complement() const noexcept { return 1.0 - r_; }

  friend bool operator==(const OddsPoint&, const OddsPoint&) = default;

 private:
  double r_;
};

// Fraction of the unit stake the gambler places on outcome 1.
class BetPoint {
 public:
  explicit BetPoint(double q);
  static BetPoint from_bit(int bit);

  double value() const noexcept { return q_; }
  bool is_decisive() const noexcept { return q_ == 0.0 || q_ == 1.0; }
  // Throws DecisiveDomainError for q in (0,1).
  int bit() const;

  friend bool operator==(const BetPoint&, const BetPoint&) = default;

 private:
  double q_;
};

// Payout exposure per winning team: l0 if team 0 wins, l1 if team 1 wins.
struct LossVector {
  double l0 = 0.0;
  double l1 = 0.0;

  double max() const noexcept { return std::max(l0, l1); }
  double operator[](int team) const noexcept { return team == 0 ? l0 : l1; }

  LossVector& operator+=(const LossVector& o) noexcept {
    l0 += o.l0;
    l1 += o.l1;
    return *this;
  }
  friend bool operator==(const LossVector&, const LossVector&) = default;
};

struct GameConfig {
  int horizon = 1;
  double overround = 1.0;

  GameConfig() = default;
  GameConfig(int horizon, double overround = 1.0);
};

// f(r,q) = ((1-q)/(1-r), q/r).
LossVector round_loss(OddsPoint r, BetPoint q) noexcept;
// Checked overload for raw values; throws DomainError outside (0,1) x [0,1].
LossVector round_loss(double r, double q);

struct Round {
  OddsPoint odds;
  BetPoint bet;
};

class Transcript {
 public:
  explicit Transcript(GameConfig config);

  // Appends a round and accumulates its loss left to right.
  void push(OddsPoint r, BetPoint q);

  const GameConfig& config() const noexcept { return config_; }
  const std::vector<Round>& rounds() const noexcept { return rounds_; }
  const LossVector& accumulated() const noexcept { return accumulated_; }
  bool complete() const noexcept {
    return static_cast<int>(rounds_.size()) == config_.horizon;
  }

  std::vector<OddsPoint> odds() const;
  std::vector<BetPoint> bets() const;

  // Sum of per-round losses in the same order as push().
  LossVector recompute_accumulated() const;

 private:
  GameConfig config_;
  std::vector<Round> rounds_;
  LossVector accumulated_;
};

class HouseStrategy {
 public:
  virtual ~HouseStrategy() = default;

  // Odds for round history.size()+1 given the bets q^{t-1}. Called exactly
  // once per round, in order. Returns the raw proposal; play_game validates it.
  virtual double next_odds(std::span<const BetPoint> history) = 0;
  virtual int horizon() const = 0;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<HouseStrategy> clone() const = 0;
};

// What the gambler sees before betting in round `round`: r^t, its own q^{t-1},
// and the exposure accumulated so far.
struct GamblerView {
  int round = 1;
  int horizon = 1;
  std::span<const OddsPoint> odds;
  std::span<const BetPoint> bets;
  LossVector accumulated;

  OddsPoint current_odds() const { return odds.back(); }
  bool last_round() const noexcept { return round == horizon; }
};

class GamblerStrategy {
 public:
  virtual ~GamblerStrategy() = default;

  virtual double next_bet(const GamblerView& view) = 0;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<GamblerStrategy> clone() const = 0;
};

// Plays exactly config.horizon rounds. Out-of-domain values from either side,
// and strategy-side domain errors, surface as ProtocolError carrying the round.
Transcript play_game(HouseStrategy& house, GamblerStrategy& gambler,
                     const GameConfig& config);

// max(l0, l1) of a complete transcript.
double game_loss(const Transcript& transcript);

// T * (1 - loss / (T * overround)).
double house_gain(double loss, const GameConfig& config);

}  // namespace bibalance
