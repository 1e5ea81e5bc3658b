#include "bibalance/strategies.hpp"

#include <cmath>
#include <functional>

#include "bibalance/errors.hpp"

namespace bibalance {

namespace {

void check_history(std::span<const BetPoint> history, int horizon) {
  if (static_cast<int>(history.size()) >= horizon) {
    throw DomainError("odds requested for round " +
                      std::to_string(history.size() + 1) + " past horizon " +
                      std::to_string(horizon));
  }
}

}  // namespace

DecisiveState optimal_decisive_init(int horizon) {
  const double x = root_fixed_point(horizon);
  return DecisiveState{x, x, 1, horizon};
}

std::pair<DecisiveState, OddsPoint> optimal_decisive_step(DecisiveState s,
                                                          int q_prev) {
  if (q_prev != 0 && q_prev != 1) {
    throw DecisiveDomainError("optimal decisive strategy needs q in {0,1}");
  }
  if (s.t >= s.horizon) {
    throw DomainError("no rounds left after round " + std::to_string(s.t));
  }
  const int d = s.horizon - s.t;
  const ValuePair v = advance_value(s.value(), q_prev, d);
  const OddsPoint r = odds_from_value(v, d);
  return {DecisiveState{v.v0, v.v1, s.t + 1, s.horizon}, r};
}

std::pair<DecisiveState, OddsPoint> optimal_decisive_step(DecisiveState s,
                                                          BetPoint q_prev) {
  return optimal_decisive_step(s, q_prev.bit());
}

double expected_skeleton_odds(std::span<const BetPoint> history, int horizon) {
  check_history(history, horizon);
  int branching = 0;
  for (const auto& q : history) branching += q.is_decisive() ? 0 : 1;
  if (branching > kMaxExactBranchingBets) {
    throw CapacityError(
        "exact expected-skeleton odds branch on " + std::to_string(branching) +
        " non-decisive bets (limit " + std::to_string(kMaxExactBranchingBets) +
        "); use the Monte Carlo strategy");
  }

  // The first round always posts r_1 = 1/2.
  if (history.empty()) return 0.5;
  const double x = root_fixed_point(horizon);
  const int n = static_cast<int>(history.size());
  double total = 0.0;
  // Leaves are visited in lexicographic order of the realized bits.
  std::function<void(int, ValuePair, double)> walk = [&](int i, ValuePair v,
                                                         double w) {
    if (i == n) {
      total += w * odds_from_value(v, horizon - n).value();
      return;
    }
    const double q = history[static_cast<std::size_t>(i)].value();
    const int d_after = horizon - i - 1;
    const double w0 = w * (1.0 - q);
    if (w0 >= kPruneWeight) walk(i + 1, advance_value(v, 0, d_after), w0);
    const double w1 = w * q;
    if (w1 >= kPruneWeight) walk(i + 1, advance_value(v, 1, d_after), w1);
  };
  walk(0, ValuePair{x, x}, 1.0);
  return total;
}

OddsPoint kt_baseline_odds(std::span<const BetPoint> history) {
  double ones = 0.0;
  for (const auto& q : history) ones += q.bit();
  const double t = static_cast<double>(history.size()) + 1.0;
  return OddsPoint((0.5 + ones) / t);
}

OddsPoint uniform_baseline_odds(std::span<const BetPoint>) {
  return OddsPoint(0.5);
}

OptimalDecisiveHouse::OptimalDecisiveHouse(int horizon)
    : state_(optimal_decisive_init(horizon)) {}

double OptimalDecisiveHouse::next_odds(std::span<const BetPoint> history) {
  check_history(history, state_.horizon);
  if (static_cast<int>(history.size()) != served_) {
    throw DomainError("odds must be requested once per round, in order");
  }
  ++served_;
  if (history.empty()) return 0.5;
  auto [next, r] = optimal_decisive_step(state_, history.back());
  state_ = next;
  return r.value();
}

ExpectedSkeletonHouse::ExpectedSkeletonHouse(int horizon, std::string name)
    : horizon_(horizon), name_(std::move(name)) {
  const double x = root_fixed_point(horizon);
  support_.push_back({ValuePair{x, x}, 1.0});
}

void ExpectedSkeletonHouse::absorb(BetPoint q) {
  const double p = q.value();
  if (!q.is_decisive() && ++branching_bets_ > kMaxExactBranchingBets) {
    throw CapacityError(
        "expected-skeleton support would exceed 2^" +
        std::to_string(kMaxExactBranchingBets) +
        " branches; use the Monte Carlo strategy");
  }
  const int d_after = horizon_ - rounds_served_;
  std::vector<Branch> next;
  next.reserve(q.is_decisive() ? support_.size() : 2 * support_.size());
  for (const auto& branch : support_) {
    const double w0 = branch.weight * (1.0 - p);
    if (w0 >= kPruneWeight) {
      next.push_back({advance_value(branch.value, 0, d_after), w0});
    }
    const double w1 = branch.weight * p;
    if (w1 >= kPruneWeight) {
      next.push_back({advance_value(branch.value, 1, d_after), w1});
    }
  }
  support_ = std::move(next);
}

double ExpectedSkeletonHouse::next_odds(std::span<const BetPoint> history) {
  check_history(history, horizon_);
  if (static_cast<int>(history.size()) != rounds_served_) {
    throw DomainError("odds must be requested once per round, in order");
  }
  if (history.empty()) {
    ++rounds_served_;
    return 0.5;
  }
  absorb(history.back());
  ++rounds_served_;
  const int remaining = horizon_ - rounds_served_ + 1;
  double total = 0.0;
  for (const auto& branch : support_) {
    total += branch.weight * odds_from_value(branch.value, remaining).value();
  }
  return total;
}

double KtHouse::next_odds(std::span<const BetPoint> history) {
  check_history(history, horizon_);
  return kt_baseline_odds(history).value();
}

double UniformHouse::next_odds(std::span<const BetPoint> history) {
  check_history(history, horizon_);
  return 0.5;
}

}  // namespace bibalance
