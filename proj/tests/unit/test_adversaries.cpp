#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bibalance/adversaries.hpp"
#include "bibalance/blackwell.hpp"
#include "bibalance/errors.hpp"
#include "bibalance/strategies.hpp"

using namespace bibalance;

namespace {

double opt(int T) { return T + std::sqrt(static_cast<double>(T)); }

}  // namespace

TEST(Exhaustive, OptimalHouse) {
  const WorstCase wc = exhaustive_worst_case(OptimalDecisiveHouse(5));
  EXPECT_NEAR(wc.loss, opt(5), 1e-12);
  EXPECT_EQ(wc.bits, (std::vector<int>{0, 0, 0, 0, 0}));
  EXPECT_EQ(wc.leaves, 32U);
}

TEST(Exhaustive, UniformHouse) {
  const WorstCase wc = exhaustive_worst_case(UniformHouse(4));
  EXPECT_EQ(wc.loss, 8.0);
  EXPECT_EQ(wc.bits, (std::vector<int>{0, 0, 0, 0}));
  EXPECT_EQ(wc.accumulated, (LossVector{8.0, 0.0}));
}

TEST(Exhaustive, KtHouseIsAtLeastTwiceTheHorizon) {
  EXPECT_GE(exhaustive_worst_case(KtHouse(6)).loss, 12.0);
}

TEST(Exhaustive, Limits) {
  EXPECT_THROW(exhaustive_worst_case(UniformHouse(23)), CapacityError);
  EXPECT_THROW(exhaustive_worst_case([] { return std::make_unique<UniformHouse>(3); }, 4),
               ProtocolError);
}

TEST(Exhaustive, HouseErrorsBecomeProtocolErrors) {
  struct Picky : HouseStrategy {
    int h;
    explicit Picky(int horizon) : h(horizon) {}
    double next_odds(std::span<const BetPoint> hist) override {
      if (hist.size() == 2) throw DomainError("no");
      return 0.5;
    }
    int horizon() const override { return h; }
    std::string name() const override { return "picky"; }
    std::unique_ptr<HouseStrategy> clone() const override {
      return std::make_unique<Picky>(*this);
    }
  };
  try {
    exhaustive_worst_case(Picky(4));
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_EQ(e.round(), 3);
  }
}

TEST(Exhaustive, AgreesWithPlainEnumeration) {
  for (int T = 1; T <= 8; ++T) {
    const BlackwellHouse proto(T, DeltaParam(1.5));
    double best = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << T); ++x) {
      std::vector<BetPoint> bets;
      for (int i = T - 1; i >= 0; --i) bets.push_back(BetPoint::from_bit((x >> i) & 1U));
      BlackwellHouse house(T, DeltaParam(1.5));
      ReplayGambler g(bets);
      best = std::max(best, game_loss(play_game(house, g, GameConfig(T))));
    }
    EXPECT_DOUBLE_EQ(exhaustive_worst_case(proto).loss, best) << T;
  }
}

TEST(Greedy, Examples) {
  EXPECT_EQ(greedy_decisive_step(OddsPoint(0.5), LossVector{}), 1);
  EXPECT_EQ(greedy_decisive_step(OddsPoint(0.5), LossVector{1.0, 0.0}), 0);
  EXPECT_EQ(greedy_decisive_step(OddsPoint(0.2), LossVector{}), 1);
  EXPECT_EQ(greedy_decisive_step(OddsPoint(0.8), LossVector{}), 0);
  EXPECT_EQ(greedy_decisive_step(OddsPoint(0.8), LossVector{0.0, 5.0}), 1);
  EXPECT_EQ(final_round_rule(0, OddsPoint(0.5), LossVector{}), 1);
  EXPECT_EQ(final_round_rule(1, OddsPoint(0.9), LossVector{}), 0);
  EXPECT_EQ(proportional_step(OddsPoint(0.3)).value(), 0.3);
}

TEST(Greedy, ForcesTheOptimalLoss) {
  for (int T : {1, 2, 5, 17, 100}) {
    ExpectedSkeletonHouse house(T);
    GreedyGambler g;
    EXPECT_NEAR(game_loss(play_game(house, g, GameConfig(T))), opt(T), 1e-9 * T);
  }
}

TEST(Greedy, ExhaustiveDominates) {
  for (int T = 1; T <= 10; ++T) {
    KtHouse kt(T);
    GreedyGambler g;
    const double greedy = game_loss(play_game(kt, g, GameConfig(T)));
    EXPECT_GE(exhaustive_worst_case(KtHouse(T)).loss, greedy - 1e-12);
  }
}

TEST(Gamblers, NamesAndSequences) {
  EXPECT_EQ(ConstantGambler(0.25).name(), "constant:0.25");
  EXPECT_EQ(RandomGambler(9).name(), "random:9");
  EXPECT_EQ(FinalRoundOverride(std::make_unique<AlternatingGambler>()).name(),
            "alternating+final");
  EXPECT_THROW(ConstantGambler(1.5), DomainError);

  UniformHouse house(4);
  AlternatingGambler alt;
  const Transcript t = play_game(house, alt, GameConfig(4));
  std::vector<double> bets;
  for (const auto& r : t.rounds()) bets.push_back(r.bet.value());
  EXPECT_EQ(bets, (std::vector<double>{0.0, 1.0, 0.0, 1.0}));
}

TEST(Gamblers, RandomIsSeededAndDecisive) {
  auto run = [](std::uint64_t seed) {
    UniformHouse house(50);
    RandomGambler g(seed);
    std::vector<double> out;
    const Transcript t = play_game(house, g, GameConfig(50));
    for (const auto& r : t.rounds()) {
      out.push_back(r.bet.value());
    }
    return out;
  };
  const auto a = run(3);
  EXPECT_EQ(a, run(3));
  EXPECT_NE(a, run(4));
  for (double q : a) EXPECT_TRUE(q == 0.0 || q == 1.0);
}

TEST(Gamblers, FinalRoundOverridePicksTheLargerCoordinate) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    KtHouse house(9);
    FinalRoundOverride g(std::make_unique<RandomGambler>(s));
    const Transcript t = play_game(house, g, GameConfig(9));
    const auto& last = t.rounds().back();
    const LossVector f = round_loss(last.odds, last.bet);
    const LossVector before{t.accumulated().l0 - f.l0, t.accumulated().l1 - f.l1};
    const double alt = std::max(before.l0 + 1.0 / last.odds.complement(),
                                before.l1 + 1.0 / last.odds.value());
    EXPECT_NEAR(game_loss(t), alt, 1e-9);
  }
}

TEST(Replay, ReproducesALossBitForBit) {
  BlackwellHouse h1(12, DeltaParam(1.4));
  UniformBetGambler g(5);
  const Transcript t1 = play_game(h1, g, GameConfig(12));
  std::vector<BetPoint> bets;
  for (const auto& r : t1.rounds()) bets.push_back(r.bet);
  BlackwellHouse h2(12, DeltaParam(1.4));
  ReplayGambler replay(bets);
  const Transcript t2 = play_game(h2, replay, GameConfig(12));
  EXPECT_EQ(game_loss(t1), game_loss(t2));
  EXPECT_EQ(t1.accumulated(), t2.accumulated());

  ReplayGambler short_replay({BetPoint(1.0)});
  UniformHouse h3(3);
  EXPECT_THROW(play_game(h3, short_replay, GameConfig(3)), ProtocolError);
}

TEST(Replay, ExhaustiveGamblerReplaysTheWorstCase) {
  const KtHouse proto(7);
  const WorstCase wc = exhaustive_worst_case(proto);
  auto g = make_exhaustive_gambler(proto);
  EXPECT_EQ(g->name(), "exhaustive");
  KtHouse house(7);
  EXPECT_EQ(game_loss(play_game(house, *g, GameConfig(7))), wc.loss);
}

TEST(ParseBet, Examples) {
  EXPECT_EQ(parse_bet("1"), 1.0);
  EXPECT_EQ(parse_bet("  0.25 \r"), 0.25);
  EXPECT_FALSE(parse_bet("x"));
  EXPECT_FALSE(parse_bet("7"));
  EXPECT_FALSE(parse_bet(""));
  EXPECT_FALSE(parse_bet("0.5x"));
  EXPECT_FALSE(parse_bet("-0.1"));
}

TEST(Interactive, RepromptsAndReadsBets) {
  std::istringstream in("1\nx\n7\n0.25\n");
  std::ostringstream out;
  InteractiveGambler g(in, out, 1.0);
  UniformHouse house(2);
  const Transcript t = play_game(house, g, GameConfig(2));
  EXPECT_EQ(t.rounds()[0].bet.value(), 1.0);
  EXPECT_EQ(t.rounds()[1].bet.value(), 0.25);
  const std::string text = out.str();
  EXPECT_NE(text.find("round 1/2"), std::string::npos);
  EXPECT_NE(text.find("not a number in [0,1]: 'x'"), std::string::npos);
  EXPECT_NE(text.find("not a number in [0,1]: '7'"), std::string::npos);
}

TEST(Interactive, EndOfInputAborts) {
  std::istringstream in("1\n");
  std::ostringstream out;
  InteractiveGambler g(in, out, 1.0);
  UniformHouse house(3);
  EXPECT_THROW(play_game(house, g, GameConfig(3)), GameAborted);
}
