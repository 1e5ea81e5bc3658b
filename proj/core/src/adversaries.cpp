#include "bibalance/adversaries.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "bibalance/errors.hpp"

namespace bibalance {

namespace {

struct Search {
  int horizon;
  std::vector<BetPoint> history;
  std::vector<int> bits;
  WorstCase best;
  bool have_best = false;

  void visit(std::unique_ptr<HouseStrategy> house, LossVector acc) {
    const int t = static_cast<int>(history.size());
    if (t == horizon) {
      ++best.leaves;
      const double loss = acc.max();
      if (!have_best ||
          loss > best.loss + 1e-12 * std::max(1.0, std::abs(best.loss))) {
        best.loss = loss;
        best.accumulated = acc;
        best.bits = bits;
        have_best = true;
      }
      return;
    }
    double raw = 0.0;
    try {
      raw = house->next_odds(history);
    } catch (const DomainError& e) {
      throw ProtocolError(t + 1, e.what());
    } catch (const InfeasibleError& e) {
      throw ProtocolError(t + 1, e.what());
    }
    if (!(raw > 0.0 && raw < 1.0)) {
      throw ProtocolError(t + 1, "house odds outside (0,1)");
    }
    const OddsPoint r(raw);
    for (int b = 0; b <= 1; ++b) {
      // The second branch takes over the prefix state; the first gets a copy.
      std::unique_ptr<HouseStrategy> next = b == 0 ? house->clone() : std::move(house);
      const BetPoint q = BetPoint::from_bit(b);
      LossVector child = acc;
      child += round_loss(r, q);
      history.push_back(q);
      bits.push_back(b);
      visit(std::move(next), child);
      history.pop_back();
      bits.pop_back();
    }
  }
};

int argmax_payout(OddsPoint r, const LossVector& acc) {
  const double if0 = acc.l0 + 1.0 / r.complement();
  const double if1 = acc.l1 + 1.0 / r.value();
  return if0 > if1 ? 0 : 1;
}

}  // namespace

WorstCase exhaustive_worst_case(const HouseFactory& factory, int horizon) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  if (horizon > kMaxExhaustiveHorizon) {
    throw CapacityError("exhaustive search is limited to T <= " +
                        std::to_string(kMaxExhaustiveHorizon) + ", got " +
                        std::to_string(horizon));
  }
  auto house = factory();
  if (house->horizon() != horizon) {
    throw ProtocolError(0, "house horizon does not match the search horizon");
  }
  Search search{horizon, {}, {}, {}, false};
  search.history.reserve(static_cast<std::size_t>(horizon));
  search.bits.reserve(static_cast<std::size_t>(horizon));
  search.visit(std::move(house), LossVector{});
  return search.best;
}

WorstCase exhaustive_worst_case(const HouseStrategy& prototype) {
  return exhaustive_worst_case([&] { return prototype.clone(); },
                               prototype.horizon());
}

int greedy_decisive_step(OddsPoint r, const LossVector& accumulated) {
  return argmax_payout(r, accumulated);
}

BetPoint proportional_step(OddsPoint r) { return BetPoint(r.value()); }

int final_round_rule(int /*candidate*/, OddsPoint r,
                     const LossVector& accumulated) {
  return argmax_payout(r, accumulated);
}

double GreedyGambler::next_bet(const GamblerView& view) {
  return greedy_decisive_step(view.current_odds(), view.accumulated);
}

double ProportionalGambler::next_bet(const GamblerView& view) {
  return proportional_step(view.current_odds()).value();
}

ConstantGambler::ConstantGambler(double q) : q_(BetPoint(q).value()) {}

std::string ConstantGambler::name() const {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, q_);
  return "constant:" + std::string(buf, res.ptr);
}

double AlternatingGambler::next_bet(const GamblerView& view) {
  return (view.round - 1) % 2 == 0 ? 0.0 : 1.0;
}

RandomGambler::RandomGambler(std::uint64_t seed) : seed_(seed), rng_(seed) {}

double RandomGambler::next_bet(const GamblerView&) {
  return static_cast<double>(rng_() >> 63);
}

std::string RandomGambler::name() const {
  return "random:" + std::to_string(seed_);
}

UniformBetGambler::UniformBetGambler(std::uint64_t seed) : rng_(seed) {}

double UniformBetGambler::next_bet(const GamblerView&) {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

ReplayGambler::ReplayGambler(std::vector<BetPoint> bets, std::string label)
    : bets_(std::move(bets)), label_(std::move(label)) {}

double ReplayGambler::next_bet(const GamblerView& view) {
  const auto i = static_cast<std::size_t>(view.round - 1);
  if (i >= bets_.size()) {
    throw DomainError("replay has only " + std::to_string(bets_.size()) +
                      " bets");
  }
  return bets_[i].value();
}

std::unique_ptr<GamblerStrategy> make_exhaustive_gambler(
    const HouseStrategy& prototype) {
  const WorstCase wc = exhaustive_worst_case(prototype);
  std::vector<BetPoint> bets;
  bets.reserve(wc.bits.size());
  for (int b : wc.bits) bets.push_back(BetPoint::from_bit(b));
  return std::make_unique<ReplayGambler>(std::move(bets), "exhaustive");
}

FinalRoundOverride::FinalRoundOverride(std::unique_ptr<GamblerStrategy> inner)
    : inner_(std::move(inner)) {}

FinalRoundOverride::FinalRoundOverride(const FinalRoundOverride& other)
    : inner_(other.inner_->clone()) {}

double FinalRoundOverride::next_bet(const GamblerView& view) {
  const double q = inner_->next_bet(view);
  if (!view.last_round()) return q;
  const int candidate = q >= 0.5 ? 1 : 0;
  return final_round_rule(candidate, view.current_odds(), view.accumulated);
}

InteractiveGambler::InteractiveGambler(std::istream& in, std::ostream& out,
                                       double overround)
    : in_(&in), out_(&out), overround_(overround) {}

double InteractiveGambler::next_bet(const GamblerView& view) {
  const OddsPoint r = view.current_odds();
  std::ostream& out = *out_;
  out << "round " << view.round << "/" << view.horizon << "  r=" << r.value()
      << "  payout if 0 wins: " << 1.0 / (overround_ * r.complement())
      << "  payout if 1 wins: " << 1.0 / (overround_ * r.value())
      << "  exposure (" << view.accumulated.l0 << ", " << view.accumulated.l1
      << ")\n";
  std::string line;
  while (true) {
    out << "q in [0,1]> " << std::flush;
    if (!std::getline(*in_, line)) {
      throw GameAborted("input closed in round " + std::to_string(view.round));
    }
    if (auto q = parse_bet(line)) return *q;
    out << "not a number in [0,1]: '" << line << "'\n";
  }
}

std::optional<double> parse_bet(const std::string& line) {
  std::size_t first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return std::nullopt;
  std::size_t last = line.find_last_not_of(" \t\r");
  const char* begin = line.data() + first;
  const char* end = line.data() + last + 1;
  double q = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, q);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  if (!(q >= 0.0 && q <= 1.0)) return std::nullopt;
  return q;
}

}  // namespace bibalance
