#include "bibalance/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "bibalance/adversaries.hpp"
#include "bibalance/errors.hpp"
#include "bibalance/strategies.hpp"

namespace bibalance {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class GridSolver {
 public:
  explicit GridSolver(const GridSpec& spec) {
    for (int k = 1;; ++k) {
      const double r = k * spec.resolution;
      if (r >= 1.0 - 1e-9) break;
      pay1_.push_back(1.0 / r);
      pay0_.push_back(1.0 / (1.0 - r));
    }
    if (spec.q_grid > 0) {
      for (int i = 0; i <= spec.q_grid; ++i) {
        bets_.push_back(static_cast<double>(i) / spec.q_grid);
      }
    } else {
      bets_ = {0.0, 1.0};
    }
  }

  // min over odds of max over bets; values at or below `floor` are only
  // reported as such, which is all the caller needs.
  double solve(double l0, double l1, int remaining, double floor) const {
    if (remaining == 0) return std::max(l0, l1);
    double best = kInf;
    for (std::size_t k = 0; k < pay1_.size(); ++k) {
      double worst = -kInf;
      for (double q : bets_) {
        const double child =
            solve(l0 + (1.0 - q) * pay0_[k], l1 + q * pay1_[k], remaining - 1,
                  std::max(floor, worst));
        worst = std::max(worst, child);
        if (worst >= best) break;
      }
      best = std::min(best, worst);
      if (best <= floor) break;
    }
    return best;
  }

 private:
  std::vector<double> pay0_;
  std::vector<double> pay1_;
  std::vector<double> bets_;
};

// r1 + (1 - r1) implied by a common loss g, using r2(0) = 1/g and
// r2(1) = 1 - 1/g: each of 1/(1-r1) and 1/r1 equals g - g/(g-1).
double equalizer_sum(double g) { return 2.0 / (g - g / (g - 1.0)); }

struct Node {
  DecisiveState state;
  double r;
};

Node descend(int horizon, std::string_view prefix) {
  Node node{optimal_decisive_init(horizon), 0.5};
  for (char c : prefix) {
    if (c != '0' && c != '1') throw DomainError("prefix must be a bit string");
    auto [s, r] = optimal_decisive_step(node.state, c - '0');
    node = {s, r.value()};
  }
  return node;
}

}  // namespace

GridSpec::GridSpec(double res, int t, int q)
    : resolution(res), horizon(t), q_grid(q) {
  if (!(res > 0.0 && res <= 0.01)) {
    throw DomainError("grid resolution must lie in (0, 0.01]");
  }
  if (t < 1 || t > 3) throw DomainError("grid minimax supports 1 <= T <= 3");
  if (q < 0) throw DomainError("q grid must be >= 0");
  if (q > 0 && t > 2) throw DomainError("q grid mode supports T <= 2");
}

double grid_minimax(const GridSpec& spec) {
  const GridSpec checked(spec.resolution, spec.horizon, spec.q_grid);
  return GridSolver(checked).solve(0.0, 0.0, checked.horizon, -kInf);
}

double equalizer_residual_T2(double target) {
  if (!(target > 2.0)) throw DomainError("T=2 equalizing loss exceeds 2");
  return equalizer_sum(target) - 1.0;
}

EqualizerT2 equalizer_solve_T2() {
  double lo = 2.0;
  double hi = 6.0;
  int iterations = 0;
  // equalizer_sum decreases from +inf at 2 to 5/12 at 6.
  while (hi - lo > 1e-12 && iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (equalizer_sum(mid) - 1.0 > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  const double g = 0.5 * (lo + hi);
  EqualizerT2 out;
  out.loss = g;
  out.r2_after0 = 1.0 / g;
  out.r2_after1 = 1.0 - 1.0 / g;
  out.r1 = 1.0 / (g - g / (g - 1.0));
  out.residual = equalizer_residual_T2(g);
  out.iterations = iterations;
  return out;
}

OracleReport verify_optimal_loss(int horizon) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  if (horizon > kMaxExhaustiveHorizon) {
    throw CapacityError("optimal-loss enumeration is limited to T <= " +
                        std::to_string(kMaxExhaustiveHorizon));
  }
  const double target = horizon + std::sqrt(static_cast<double>(horizon));
  OracleReport report;
  report.check = "optimal-loss";
  report.horizon = horizon;
  report.value = target;
  bool winner_ok = true;
  std::string first_failure;

  auto leaf = [&](const LossVector& acc, int last_bit) {
    ++report.cases;
    report.max_abs_err =
        std::max(report.max_abs_err, std::abs(acc.max() - target));
    if (!(acc[last_bit] > acc[1 - last_bit])) {
      if (winner_ok) {
        first_failure = "final bet's coordinate is not the strict maximum";
      }
      winner_ok = false;
    }
  };
  auto visit = [&](auto&& self, DecisiveState s, double r, LossVector acc,
                   int depth) -> void {
    for (int b = 0; b <= 1; ++b) {
      LossVector next = acc;
      next += round_loss(OddsPoint(r), BetPoint::from_bit(b));
      if (depth + 1 == horizon) {
        leaf(next, b);
      } else {
        auto [s2, r2] = optimal_decisive_step(s, b);
        self(self, s2, r2.value(), next, depth + 1);
      }
    }
  };
  visit(visit, optimal_decisive_init(horizon), 0.5, LossVector{}, 0);

  report.pass = winner_ok && report.max_abs_err <= 1e-9 * target;
  report.detail = first_failure;
  return report;
}

SubtreeValue optimal_subtree_value(int horizon, std::string_view prefix) {
  const int depth = horizon - static_cast<int>(prefix.size());
  if (depth < 1) throw DomainError("prefix must leave at least one round");
  const Node root = descend(horizon, prefix);

  double lo0 = kInf, hi0 = -kInf, lo1 = kInf, hi1 = -kInf;
  auto visit = [&](auto&& self, DecisiveState s, double r, LossVector acc,
                   int level) -> void {
    for (int b = 0; b <= 1; ++b) {
      LossVector next = acc;
      next += round_loss(OddsPoint(r), BetPoint::from_bit(b));
      if (level + 1 == depth) {
        if (b == 0) {
          lo0 = std::min(lo0, next.l0);
          hi0 = std::max(hi0, next.l0);
        } else {
          lo1 = std::min(lo1, next.l1);
          hi1 = std::max(hi1, next.l1);
        }
      } else {
        auto [s2, r2] = optimal_decisive_step(s, b);
        self(self, s2, r2.value(), next, level + 1);
      }
    }
  };
  visit(visit, root.state, root.r, LossVector{}, 0);
  return SubtreeValue{hi0, hi1, hi0 - lo0, hi1 - lo1};
}

OracleReport verify_subtree_balance(int horizon) {
  if (horizon < 1 || horizon > 12) {
    throw DomainError("sub-tree scan supports 1 <= T <= 12");
  }
  OracleReport report;
  report.check = "subtree-balance";
  report.horizon = horizon;
  const double tol = 1e-9 * std::max(1, horizon);
  bool ok = true;
  for (int k = 0; k < horizon; ++k) {
    const int d = horizon - k;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
      std::string prefix(static_cast<std::size_t>(k), '0');
      for (int i = 0; i < k; ++i) {
        if ((bits >> (k - 1 - i)) & 1U) prefix[static_cast<std::size_t>(i)] = '1';
      }
      const SubtreeValue v = optimal_subtree_value(horizon, prefix);
      ++report.cases;
      const double hyperbola = (v.v0 - d) * (v.v1 - d) - d;
      const double err = std::max({v.spread0, v.spread1, std::abs(hyperbola)});
      report.max_abs_err = std::max(report.max_abs_err, err);
      if (!(v.v0 > d && v.v1 > d) || err > tol) {
        if (ok) report.detail = "first failing node: '" + prefix + "'";
        ok = false;
      }
    }
  }
  report.pass = ok;
  return report;
}

OracleReport verify_jensen_domination(int horizon, int samples,
                                      std::uint64_t seed) {
  if (horizon < 1 || horizon > 12) {
    throw DomainError("Jensen check supports 1 <= T <= 12");
  }
  if (samples < 1) throw DomainError("samples must be >= 1");
  const double bound = horizon + std::sqrt(static_cast<double>(horizon));
  OracleReport report;
  report.check = "jensen";
  report.horizon = horizon;
  report.value = 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const GameConfig config(horizon);
  for (int i = 0; i < samples; ++i) {
    std::vector<BetPoint> bets;
    for (int t = 0; t < horizon; ++t) bets.emplace_back(unif(rng));
    ExpectedSkeletonHouse house(horizon);
    ReplayGambler gambler(std::move(bets));
    const double loss = game_loss(play_game(house, gambler, config));
    report.value = std::max(report.value, loss);
    report.max_abs_err = std::max(report.max_abs_err, loss - bound);
    ++report.cases;
  }
  report.max_abs_err = std::max(0.0, report.max_abs_err);
  report.pass = report.value <= bound + 1e-9;
  return report;
}

Vec2 grid_project_to_S(const Vec2& x, DeltaParam dp, int n) {
  if (n < 1) throw DomainError("grid size must be >= 1");
  const double d = dp.value();
  // Corners A=(0,0), B=(d,0), C=(1,1), D=(0,d); P(u,v) bilinear with
  // P(u,0) on AB and P(u,1) on DC.
  Vec2 best{0.0, 0.0};
  double best_d2 = kInf;
  for (int i = 0; i <= n; ++i) {
    const double u = static_cast<double>(i) / n;
    const Vec2 bottom{u * d, 0.0};
    const Vec2 top{u, d + u * (1.0 - d)};
    const Vec2 step{(top[0] - bottom[0]) / n, (top[1] - bottom[1]) / n};
    for (int j = 0; j <= n; ++j) {
      const double px = bottom[0] + j * step[0];
      const double py = bottom[1] + j * step[1];
      const double dx = px - x[0];
      const double dy = py - x[1];
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = {px, py};
      }
    }
  }
  return best;
}

OracleReport verify_blackwell_partition(int points, std::uint64_t seed,
                                        DeltaParam dp, double extent) {
  OracleReport report;
  report.check = "blackwell-partition";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, extent);
  std::uint64_t bad = 0;
  for (int i = 0; i < points; ++i) {
    const Vec2 x{unif(rng), unif(rng)};
    const RegionPredicates p = region_predicates(x, dp);
    const int hits = int{p.in_S()} + int{p.in_A1()} + int{p.in_A2()} +
                     int{p.in_A3()};
    ++report.cases;
    if (hits != 1) ++bad;
  }
  report.max_abs_err = static_cast<double>(bad);
  report.pass = bad == 0;
  if (bad) report.detail = std::to_string(bad) + " points not in exactly one region";
  return report;
}

OracleReport verify_blackwell_projection(int points, std::uint64_t seed,
                                         DeltaParam dp, int grid,
                                         double extent) {
  OracleReport report;
  report.check = "blackwell-projection";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, extent);
  for (int i = 0; i < points; ++i) {
    const Vec2 x{unif(rng), unif(rng)};
    const Vec2 closed = project_to_S(x, dp);
    const Vec2 brute = grid_project_to_S(x, dp, grid);
    const double err = std::hypot(closed[0] - brute[0], closed[1] - brute[1]);
    report.max_abs_err = std::max(report.max_abs_err, err);
    ++report.cases;
  }
  report.pass = report.max_abs_err <= 2e-3;
  return report;
}

}  // namespace bibalance
