#include "bibalance/game.hpp"

#include <cmath>
#include <sstream>

#include "bibalance/errors.hpp"

namespace bibalance {

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

OddsPoint::OddsPoint(double r) : r_(r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("odds must lie in (0,1), got " + describe(r));
  }
}

BetPoint::BetPoint(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("bet must lie in [0,1], got " + describe(q));
  }
}

BetPoint BetPoint::from_bit(int bit) {
  if (bit != 0 && bit != 1) {
    throw DecisiveDomainError("decisive bit must be 0 or 1, got " +
                              std::to_string(bit));
  }
  return BetPoint(static_cast<double>(bit));
}

int BetPoint::bit() const {
  if (!is_decisive()) {
    throw DecisiveDomainError("bet " + describe(q_) + " is not decisive");
  }
  return q_ == 1.0 ? 1 : 0;
}

GameConfig::GameConfig(int horizon_, double overround_)
    : horizon(horizon_), overround(overround_) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  if (!(overround >= 1.0) || !std::isfinite(overround)) {
    throw DomainError("overround must be >= 1, got " + describe(overround));
  }
}

LossVector round_loss(OddsPoint r, BetPoint q) noexcept {
  return {(1.0 - q.value()) / (1.0 - r.value()), q.value() / r.value()};
}

LossVector round_loss(double r, double q) {
  return round_loss(OddsPoint(r), BetPoint(q));
}

Transcript::Transcript(GameConfig config) : config_(config) {
  rounds_.reserve(static_cast<std::size_t>(config_.horizon));
}

void Transcript::push(OddsPoint r, BetPoint q) {
  if (complete()) {
    throw ProtocolError(static_cast<int>(rounds_.size()) + 1,
                        "transcript already holds every round");
  }
  rounds_.push_back({r, q});
  accumulated_ += round_loss(r, q);
}

std::vector<OddsPoint> Transcript::odds() const {
  std::vector<OddsPoint> out;
  out.reserve(rounds_.size());
  for (const auto& round : rounds_) out.push_back(round.odds);
  return out;
}

std::vector<BetPoint> Transcript::bets() const {
  std::vector<BetPoint> out;
  out.reserve(rounds_.size());
  for (const auto& round : rounds_) out.push_back(round.bet);
  return out;
}

LossVector Transcript::recompute_accumulated() const {
  LossVector sum;
  for (const auto& round : rounds_) sum += round_loss(round.odds, round.bet);
  return sum;
}

Transcript play_game(HouseStrategy& house, GamblerStrategy& gambler,
                     const GameConfig& config) {
  if (house.horizon() != config.horizon) {
    throw ProtocolError(0, "house strategy '" + house.name() +
                               "' was initialized for horizon " +
                               std::to_string(house.horizon()) + ", game has " +
                               std::to_string(config.horizon));
  }
  Transcript transcript(config);
  std::vector<OddsPoint> odds;
  std::vector<BetPoint> bets;
  odds.reserve(static_cast<std::size_t>(config.horizon));
  bets.reserve(static_cast<std::size_t>(config.horizon));

  for (int t = 1; t <= config.horizon; ++t) {
    double r = 0.0;
    try {
      r = house.next_odds(bets);
    } catch (const DomainError& e) {
      throw ProtocolError(t, "house '" + house.name() + "': " + e.what());
    } catch (const InfeasibleError& e) {
      throw ProtocolError(t, "house '" + house.name() + "': " + e.what());
    }
    if (!(r > 0.0 && r < 1.0)) {
      throw ProtocolError(t, "house '" + house.name() + "' proposed odds " +
                                 describe(r) + " outside (0,1)");
    }
    odds.emplace_back(r);

    GamblerView view{t, config.horizon, odds, bets, transcript.accumulated()};
    double q = 0.0;
    try {
      q = gambler.next_bet(view);
    } catch (const DomainError& e) {
      throw ProtocolError(t, "gambler '" + gambler.name() + "': " + e.what());
    }
    if (!(q >= 0.0 && q <= 1.0)) {
      throw ProtocolError(t, "gambler '" + gambler.name() + "' bet " +
                                 describe(q) + " outside [0,1]");
    }
    bets.emplace_back(q);
    transcript.push(odds.back(), bets.back());
  }
  return transcript;
}

double game_loss(const Transcript& transcript) {
  if (!transcript.complete()) {
    throw DomainError("game_loss needs a complete transcript (" +
                      std::to_string(transcript.rounds().size()) + " of " +
                      std::to_string(transcript.config().horizon) + " rounds)");
  }
  return transcript.accumulated().max();
}

double house_gain(double loss, const GameConfig& config) {
  if (!(loss >= 0.0)) throw DomainError("loss must be >= 0");
  const double T = config.horizon;
  return T * (1.0 - loss / (T * config.overround));
}

}  // namespace bibalance
