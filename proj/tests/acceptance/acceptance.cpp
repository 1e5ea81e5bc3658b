// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bibalance/adversaries.hpp"
#include "bibalance/balance.hpp"
#include "bibalance/blackwell.hpp"
#include "bibalance/monte_carlo.hpp"
#include "bibalance/oracle.hpp"
#include "bibalance/strategies.hpp"

using namespace bibalance;

namespace {

double opt(int T) { return T + std::sqrt(static_cast<double>(T)); }

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
};

std::vector<BetPoint> bits_of(std::uint64_t x, int n) {
  std::vector<BetPoint> out;
  for (int i = n - 1; i >= 0; --i) out.push_back(BetPoint::from_bit((x >> i) & 1U));
  return out;
}

double odds_after(int T, const std::vector<int>& prefix) {
  OptimalDecisiveHouse house(T);
  std::vector<BetPoint> h;
  double r = house.next_odds(h);
  for (int b : prefix) {
    h.push_back(BetPoint::from_bit(b));
    r = house.next_odds(h);
  }
  return r;
}

Outcome optimal_loss() {
  Outcome o;
  for (int T = 1; T <= 12; ++T) {
    const OracleReport rep = verify_optimal_loss(T);
    o.require(rep.pass, "T=" + std::to_string(T) + " " + rep.detail);
    const WorstCase wc = exhaustive_worst_case(OptimalDecisiveHouse(T));
    o.require(std::abs(wc.loss - opt(T)) <= 1e-9 * opt(T),
              "exhaustive search at T=" + std::to_string(T));
  }
  return o;
}

Outcome large_horizon() {
  Outcome o;
  const int T = 100000;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    OptimalDecisiveHouse house(T);
    RandomGambler g(seed);
    const double loss = game_loss(play_game(house, g, GameConfig(T)));
    o.require(std::abs(loss - opt(T)) <= 1e-6 * opt(T),
              "seed " + std::to_string(seed) + " loss " + std::to_string(loss));
  }
  return o;
}

Outcome closed_form_odds() {
  Outcome o;
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  auto near = [&](double got, double want, const char* what) {
    o.require(std::abs(got - want) <= 1e-12, what);
  };
  near(odds_after(2, {}), 0.5, "T=2 root");
  near(odds_after(2, {0}), 1.0 - 1.0 / s2, "T=2 after 0");
  near(odds_after(2, {1}), 1.0 / s2, "T=2 after 1");
  near(odds_after(3, {0}), (3.0 - s3) / 4.0, "T=3 after 0");
  near(odds_after(3, {0, 0}), (3.0 - s3) / 6.0, "T=3 after 00");
  near(odds_after(3, {0, 1}), (3.0 - s3) / 2.0, "T=3 after 01");
  return o;
}

Outcome grid_oracle() {
  Outcome o;
  const double v2 = grid_minimax(GridSpec(1e-3, 2));
  o.require(std::abs(v2 - opt(2)) <= 1e-2, "T=2 grid value " + std::to_string(v2));
  const double v3 = grid_minimax(GridSpec(2e-3, 3));
  o.require(std::abs(v3 - opt(3)) <= 2e-2, "T=3 grid value " + std::to_string(v3));
  return o;
}

Outcome decisive_bound() {
  Outcome o;
  for (int T : {4, 8, 12}) {
    const OracleReport rep = verify_jensen_domination(T, 1000, 2024 + T);
    o.require(rep.pass && rep.cases == 1000,
              "T=" + std::to_string(T) + " max loss " + std::to_string(rep.value));
    ExpectedSkeletonHouse house(T);
    ProportionalGambler g;
    const double loss = game_loss(play_game(house, g, GameConfig(T)));
    o.require(std::abs(loss - T) <= 1e-9, "proportional at T=" + std::to_string(T));
  }
  return o;
}

Outcome odds_bounds() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int T = 1; T <= 12; ++T) {
    const double lo = 1.0 / opt(T);
    auto check = [&](const std::vector<BetPoint>& h) {
      const double r = expected_skeleton_odds(h, T);
      o.require(r >= lo - 1e-12 && r <= 1.0 - lo + 1e-12, "T=" + std::to_string(T));
    };
    for (int n = 0; n < T; ++n) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) check(bits_of(x, n));
    }
    for (int i = 0; i < 200; ++i) {
      std::vector<BetPoint> h;
      const int n = static_cast<int>(rng() % T);
      for (int k = 0; k < n; ++k) h.emplace_back(u(rng));
      check(h);
    }
  }
  return o;
}

Outcome mc_concentration() {
  Outcome o;
  const int T = 10;
  const double eps = 0.02;
  MCConfig config;
  config.copies = 1;
  config.epsilon = eps;
  config.delta = 0.05;
  const std::int64_t n = config.resolved_copies(T);
  o.require(n == required_samples(eps, 0.05, T), "resolved copies");

  std::uint64_t trials = 0;
  std::uint64_t deviations = 0;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    config.seed = seed;
    MCState state = mc_init(config, T);
    std::vector<BetPoint> h;
    for (int t = 1; t < T; ++t) {
      h.emplace_back(u(rng));
      const double approx = mc_next_odds(state, h.back()).value();
      const double exact = expected_skeleton_odds(h, T);
      ++trials;
      if (std::abs(approx - exact) > eps) ++deviations;
    }
  }
  const double frac = static_cast<double>(deviations) / static_cast<double>(trials);
  o.require(frac <= 0.10, "deviation fraction " + std::to_string(frac));

  for (std::int64_t copies : {1, 5, 100}) {
    MCConfig c;
    c.copies = copies;
    c.seed = 3;
    MCState state = mc_init(c, 40);
    DecisiveState ref = optimal_decisive_init(40);
    for (int t = 1; t < 40; ++t) {
      const int bit = static_cast<int>(rng() & 1U);
      auto [next, r] = optimal_decisive_step(ref, bit);
      ref = next;
      o.require(mc_next_odds(state, BetPoint::from_bit(bit)).value() == r.value(),
                "decisive mismatch with N=" + std::to_string(copies));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "N=%lld, deviation fraction %.4f", static_cast<long long>(n),
                frac);
  if (o.pass) o.note = buf;
  return o;
}

Outcome kt_counterexample() {
  Outcome o;
  for (int T : {4, 8, 16}) {
    KtHouse house(T);
    ReplayGambler g(bits_of(1, T));
    const double loss = game_loss(play_game(house, g, GameConfig(T)));
    o.require(loss == 2.0 * T, "T=" + std::to_string(T) + " loss " + std::to_string(loss));
  }
  return o;
}

Outcome blackwell() {
  Outcome o;
  for (int T : {64, 512, 4096}) {
    const DeltaParam dp = delta_for_horizon(T);
    const double final_cap = 1.0 + 2.0 * (dp.value() - 1.0);
    std::vector<std::unique_ptr<GamblerStrategy>> battery;
    battery.push_back(std::make_unique<ConstantGambler>(1.0));
    battery.push_back(std::make_unique<AlternatingGambler>());
    battery.push_back(std::make_unique<ProportionalGambler>());
    battery.push_back(std::make_unique<GreedyGambler>());
    for (std::uint64_t s = 0; s < 100; ++s) battery.push_back(std::make_unique<RandomGambler>(s));
    for (auto& g : battery) {
      BlackwellHouse house(T, dp);
      const Transcript tr = play_game(house, *g, GameConfig(T));
      LossVector acc;
      int t = 0;
      for (const auto& round : tr.rounds()) {
        acc += round_loss(round.odds, round.bet);
        ++t;
        const double avg = acc.max() / t;
        o.require(avg <= anytime_bound(t, dp) + 1e-9,
                  g->name() + " at T=" + std::to_string(T) + ", t=" + std::to_string(t));
      }
      o.require(game_loss(tr) / T <= final_cap,
                g->name() + " final at T=" + std::to_string(T));
    }
    o.require(verify_blackwell_partition(100000, 11, dp).pass,
              "partition at T=" + std::to_string(T));
  }
  const OracleReport proj = verify_blackwell_projection(500, 12, delta_for_horizon(512));
  o.require(proj.pass, "projection error " + std::to_string(proj.max_abs_err));
  return o;
}

Outcome involution() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> log_offset(std::log(1e-2), std::log(1e4));
  for (int i = 0; i < 200000; ++i) {
    const int d = 1 + static_cast<int>(rng() % 1000);
    const double x = d + std::exp(log_offset(rng));
    const double back = f_involution(d, f_involution(d, x));
    o.require(std::abs(back - x) <= 1e-9 * x, "involution at d=" + std::to_string(d));
  }
  for (int T = 1; T <= 1000000; T = T < 1000 ? T + 1 : T + 997) {
    const double x = opt(T);
    o.require(std::abs(f_involution(T, x) - x) <= 1e-9 * x,
              "fixed point at T=" + std::to_string(T));
  }
  const double top = opt(1000000);
  o.require(std::abs(f_involution(1000000, top) - top) <= 1e-9 * top, "fixed point at 10^6");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "optimal loss T+sqrt(T) for T=1..12", 10.0, optimal_loss},
      {2, "large-T stability at T=100000", 5.0, large_horizon},
      {3, "closed-form odds at T=2 and T=3", 1.0, closed_form_odds},
      {4, "grid minimax oracle", 60.0, grid_oracle},
      {5, "expected-skeleton decisive bound", 10.0, decisive_bound},
      {6, "odds bounds at T<=12", 10.0, odds_bounds},
      {7, "Monte Carlo concentration", 120.0, mc_concentration},
      {8, "KT counterexample 2T", 1.0, kt_counterexample},
      {9, "Blackwell anytime bound, partition and projection", 120.0, blackwell},
      {10, "involution and fixed point", 10.0, involution},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      out.note = "over time budget of " + std::to_string(c.budget_s) + " s";
      out.pass = false;
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name, secs, out.note.empty() ? "" : " - ", out.note.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
