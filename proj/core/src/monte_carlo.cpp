#include "bibalance/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "bibalance/errors.hpp"

namespace bibalance {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Fixed-shape pairwise reduction.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

std::int64_t MCConfig::resolved_copies(int horizon) const {
  std::int64_t n = copies;
  if (epsilon && delta) {
    n = std::max(n, required_samples(*epsilon, *delta, horizon));
  }
  if (n < 1) throw DomainError("Monte Carlo needs at least one copy");
  return n;
}

std::int64_t required_samples(double epsilon, double delta, int horizon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw DomainError("epsilon must lie in (0, 1/2]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1)");
  }
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  const double n =
      std::ceil(std::log(2.0 * horizon / delta) / (2.0 * epsilon * epsilon));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

double deviation_probability_bound(std::int64_t copies, double epsilon,
                                   int horizon) {
  if (copies < 1) throw DomainError("copies must be >= 1");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  const double p = 2.0 * horizon *
                   std::exp(-2.0 * static_cast<double>(copies) * epsilon *
                            epsilon);
  return std::min(1.0, p);
}

double loss_inflation_bound(double epsilon, int horizon) {
  const double opt = root_fixed_point(horizon);
  if (!(epsilon >= 0.0) || epsilon > 1.0 / (2.0 * opt)) {
    throw DomainError("epsilon must lie in [0, 1/(2(T+sqrt T))]");
  }
  return (1.0 + 2.0 * epsilon * opt) * opt;
}

double substream_uniform(std::uint64_t seed, std::int64_t copy, int round) {
  const std::uint64_t key =
      splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(copy)));
  const std::uint64_t bits = splitmix64(
      key ^ splitmix64(static_cast<std::uint64_t>(round) + 0x632be59bd9b4e019ULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

MCState mc_init(const MCConfig& config, int horizon) {
  const std::int64_t n = config.resolved_copies(horizon);
  const double x = root_fixed_point(horizon);
  MCState state;
  state.copies.assign(static_cast<std::size_t>(n), ValuePair{x, x});
  state.horizon = horizon;
  state.seed = config.seed;
  state.antithetic = config.antithetic;
  return state;
}

OddsPoint mc_next_odds(MCState& state, BetPoint q_prev) {
  if (state.t >= state.horizon) {
    throw DomainError("no rounds left after round " + std::to_string(state.t));
  }
  const int d = state.horizon - state.t;
  const double q = q_prev.value();
  const bool decisive = q_prev.is_decisive();

  std::vector<double> odds(state.copies.size());
  double lo = 1.0;
  double hi = 0.0;
  for (std::size_t j = 0; j < state.copies.size(); ++j) {
    int x = 0;
    if (decisive) {
      x = q == 1.0 ? 1 : 0;
    } else if (state.antithetic) {
      const double u = substream_uniform(
          state.seed, static_cast<std::int64_t>(j & ~std::size_t{1}), state.t);
      x = ((j & 1U) ? (1.0 - u) : u) < q ? 1 : 0;
    } else {
      x = substream_uniform(state.seed, static_cast<std::int64_t>(j), state.t) <
                  q
              ? 1
              : 0;
    }
    state.copies[j] = advance_value(state.copies[j], x, d);
    odds[j] = odds_from_value(state.copies[j], d).value();
    lo = std::min(lo, odds[j]);
    hi = std::max(hi, odds[j]);
  }
  state.copy_updates += state.copies.size();
  ++state.t;

  // Identical copies (always the case for decisive input) average to
  // themselves exactly.
  if (lo == hi) return OddsPoint(lo);
  const double mean =
      pairwise_sum(odds) / static_cast<double>(state.copies.size());
  return OddsPoint(std::clamp(mean, lo, hi));
}

MonteCarloHouse::MonteCarloHouse(int horizon, const MCConfig& config)
    : state_(mc_init(config, horizon)) {}

double MonteCarloHouse::next_odds(std::span<const BetPoint> history) {
  if (static_cast<int>(history.size()) >= state_.horizon) {
    throw DomainError("odds requested past the horizon");
  }
  if (static_cast<int>(history.size()) != served_) {
    throw DomainError("odds must be requested once per round, in order");
  }
  ++served_;
  if (history.empty()) return 0.5;
  return mc_next_odds(state_, history.back()).value();
}

}  // namespace bibalance
