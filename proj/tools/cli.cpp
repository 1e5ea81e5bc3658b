#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "bibalance/adversaries.hpp"
#include "bibalance/blackwell.hpp"
#include "bibalance/errors.hpp"
#include "bibalance/oracle.hpp"
#include "bibalance/registry.hpp"
#include "bibalance/serialization.hpp"

namespace bibalance::cli {

namespace {

using nlohmann::json;

struct Options {
  std::vector<std::string> houses{"optimal"};
  std::string house_params = "{}";
  std::vector<std::string> gamblers;
  std::vector<int> horizons;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::int64_t mc_n = 1000;
  std::uint64_t mc_seed = 0;
  double mc_eps = 0.0;
  double mc_delta = 0.0;
  double bw_delta = 0.0;
  double res = 1e-3;
  int q_grid = 0;
  int samples = 1000;
  int points = 0;
  bool trace = false;
  std::string check;

  // Set when the flag appeared on the command line.
  bool has_seed = false, has_mc_n = false, has_mc_seed = false,
       has_mc_eps = false, has_mc_delta = false, has_bw_delta = false,
       has_T = false;
};

// Usage errors detected after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string house_params_for(const std::string& house, const Options& o) {
  json params = json::parse(o.house_params.empty() ? "{}" : o.house_params,
                            nullptr, false);
  if (params.is_discarded() || !params.is_object()) {
    throw UsageError("--house-params must be a JSON object");
  }
  if (house == "mc") {
    if (o.has_mc_n) params["N"] = o.mc_n;
    if (o.has_mc_seed) {
      params["seed"] = o.mc_seed;
    } else if (o.has_seed && !params.contains("seed")) {
      params["seed"] = o.seed;
    }
    if (o.has_mc_eps) params["eps"] = o.mc_eps;
    if (o.has_mc_delta) params["delta"] = o.mc_delta;
    if (o.has_mc_eps != o.has_mc_delta) {
      throw UsageError("--mc-eps and --mc-delta go together");
    }
  }
  if (house == "blackwell" && o.has_bw_delta) params["delta"] = o.bw_delta;
  return params.dump();
}

std::unique_ptr<HouseStrategy> house_for(const std::string& id, int T,
                                         const Options& o) {
  return make_house(id, T, house_params_for(id, o));
}

DeltaParam blackwell_delta(int T, const Options& o) {
  return o.has_bw_delta ? DeltaParam(o.bw_delta) : delta_for_horizon(T);
}

std::vector<std::string> battery(std::uint64_t seed) {
  std::vector<std::string> ids{"greedy", "constant:0", "constant:1",
                               "alternating", "alternating+final"};
  for (std::uint64_t i = 0; i < 8; ++i) {
    ids.push_back("random:" + std::to_string(seed + i) + "+final");
  }
  return ids;
}

Transcript play(HouseStrategy& house, const std::string& gambler_id, int T,
                const Options& o, std::istream* in = nullptr,
                std::ostream* out = nullptr) {
  GamblerContext ctx;
  ctx.horizon = T;
  ctx.overround = o.gamma;
  ctx.house = &house;
  ctx.in = in;
  ctx.out = out;
  auto gambler = make_gambler(gambler_id, ctx);
  return play_game(house, *gambler, GameConfig(T, o.gamma));
}

// Worst loss of `house_id` at horizon T under the requested adversary.
double worst_loss(const std::string& house_id, int T,
                  const std::string& gambler, const Options& o) {
  const auto proto = house_for(house_id, T, o);
  std::string mode = gambler;
  if (mode == "auto") mode = T <= 16 ? "exhaustive" : "battery";
  if (mode == "exhaustive") return exhaustive_worst_case(*proto).loss;
  std::vector<std::string> ids =
      mode == "battery" ? battery(o.seed) : std::vector<std::string>{mode};
  double worst = 0.0;
  for (const auto& id : ids) {
    auto house = proto->clone();
    worst = std::max(worst, game_loss(play(*house, id, T, o)));
  }
  return worst;
}

std::string normalized_bound(const std::string& house_id, int T,
                             const Options& o) {
  if (house_id == "optimal" || house_id == "expected" || house_id == "mc") {
    return format_real(1.0 + 1.0 / std::sqrt(static_cast<double>(T)));
  }
  if (house_id == "uniform") return "2";
  if (house_id == "blackwell") {
    return format_real(anytime_bound(T, blackwell_delta(T, o)));
  }
  return "";
}

// Runs job(i) for i in [0, n) on the worker pool; the first exception in
// index order is rethrown.
template <typename Job>
void parallel_for(std::size_t n, Job job) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count =
      std::max(1U, std::min<unsigned>(worker_count(), static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + o.out);
  file << text;
}

int horizon_or(const Options& o, int fallback) {
  if (!o.has_T) return fallback;
  if (o.horizons.size() != 1) throw UsageError("--T takes a single value here");
  return o.horizons.front();
}

std::string gambler_or(const Options& o, const std::string& fallback) {
  if (o.gamblers.empty()) return fallback;
  if (o.gamblers.size() != 1) throw UsageError("--gambler takes a single id here");
  return o.gamblers.front();
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const int T = horizon_or(o, 10);
  if (o.houses.size() != 1) throw UsageError("simulate takes a single --house");
  const std::string gambler = gambler_or(o, "greedy");
  auto house = house_for(o.houses.front(), T, o);
  const Transcript transcript = play(*house, gambler, T, o);
  if (!o.out.empty()) {
    emit(o.format == "json" ? transcript_to_json(transcript)
                            : transcript_to_csv(transcript),
         o, out);
  }
  const double loss = game_loss(transcript);
  const json summary = {
      {"house", o.houses.front()},
      {"gambler", gambler},
      {"T", T},
      {"gamma", o.gamma},
      {"l0", transcript.accumulated().l0},
      {"l1", transcript.accumulated().l1},
      {"loss", loss},
      {"gain", house_gain(loss, transcript.config())},
  };
  out << summary.dump() << "\n";
  return kOk;
}

std::string blackwell_trace(const Options& o) {
  const int T = horizon_or(o, 64);
  const std::string gambler = gambler_or(o, "greedy");
  if (o.houses.size() != 1) throw UsageError("--trace takes a single --house");
  const DeltaParam dp = blackwell_delta(T, o);
  auto house = house_for(o.houses.front(), T, o);
  const Transcript transcript = play(*house, gambler, T, o);
  std::string csv = "t,phi1,phi2,region,r,bound\n";
  LossVector acc;
  int t = 0;
  for (const auto& round : transcript.rounds()) {
    acc += round_loss(round.odds, round.bet);
    ++t;
    const Vec2 phi{acc.l0 / t, acc.l1 / t};
    csv += std::to_string(t) + "," + format_real(phi[0]) + "," +
           format_real(phi[1]) + "," +
           std::string(region_name(classify_region(phi, dp))) + "," +
           format_real(round.odds.value()) + "," +
           format_real(anytime_bound(t, dp)) + "\n";
  }
  return csv;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.trace) {
    emit(blackwell_trace(o), o, out);
    return kOk;
  }
  const std::vector<int> Ts =
      o.has_T ? o.horizons : std::vector<int>{4, 16, 64};
  const std::string gambler = gambler_or(o, "auto");
  struct Item {
    int T;
    std::string house;
    std::string row;
  };
  std::vector<Item> items;
  for (int T : Ts) {
    for (const auto& h : o.houses) items.push_back({T, h, {}});
  }
  parallel_for(items.size(), [&](std::size_t i) {
    Item& item = items[i];
    const double loss = worst_loss(item.house, item.T, gambler, o);
    item.row = std::to_string(item.T) + "," + item.house + "," +
               format_real(loss) + "," + format_real(loss / item.T) + "," +
               normalized_bound(item.house, item.T, o) + "\n";
  });
  std::string csv = "T,house,worst_loss,normalized_loss,bound\n";
  for (const auto& item : items) csv += item.row;
  emit(csv, o, out);
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const int T = horizon_or(o, 64);
  const std::vector<std::string> gamblers =
      o.gamblers.empty() ? battery(o.seed) : o.gamblers;
  struct Item {
    std::string house;
    std::string gambler;
    std::string row;
  };
  std::vector<Item> items;
  for (const auto& h : o.houses) {
    for (const auto& g : gamblers) items.push_back({h, g, {}});
  }
  parallel_for(items.size(), [&](std::size_t i) {
    Item& item = items[i];
    auto house = house_for(item.house, T, o);
    const double loss = game_loss(play(*house, item.gambler, T, o));
    item.row = item.house + "," + item.gambler + "," + format_real(loss) +
               "," + format_real(loss / T) + "\n";
  });
  std::string csv = "house,gambler,loss,normalized_loss\n";
  for (const auto& item : items) csv += item.row;
  emit(csv, o, out);
  return kOk;
}

OracleReport run_check(const Options& o) {
  const std::string& c = o.check;
  if (c == "optimal-loss") return verify_optimal_loss(horizon_or(o, 12));
  if (c == "subtree-balance") return verify_subtree_balance(horizon_or(o, 4));
  if (c == "jensen") {
    return verify_jensen_domination(horizon_or(o, 8), o.samples, o.seed);
  }
  if (c == "grid-minimax") {
    const int T = horizon_or(o, 2);
    const double value = grid_minimax(GridSpec(o.res, T, o.q_grid));
    const double target = T + std::sqrt(static_cast<double>(T));
    const double tol = T == 1 ? 5e-3 : T == 2 ? 1e-2 : 2e-2;
    OracleReport r;
    r.check = c;
    r.horizon = T;
    r.value = value;
    r.max_abs_err = std::abs(value - target);
    r.pass = r.max_abs_err <= tol;
    return r;
  }
  if (c == "equalizer-t2") {
    const EqualizerT2 eq = equalizer_solve_T2();
    const double s = std::sqrt(2.0);
    OracleReport r;
    r.check = c;
    r.horizon = 2;
    r.value = eq.loss;
    r.max_abs_err = std::max({std::abs(eq.r1 - 0.5),
                              std::abs(eq.r2_after0 - (1.0 - 1.0 / s)),
                              std::abs(eq.r2_after1 - 1.0 / s),
                              std::abs(eq.loss - (2.0 + s))});
    r.pass = r.max_abs_err <= 1e-10;
    return r;
  }
  const DeltaParam dp = o.has_bw_delta ? DeltaParam(o.bw_delta)
                                       : DeltaParam(4.0 / 3.0);
  if (c == "blackwell-partition") {
    return verify_blackwell_partition(o.points > 0 ? o.points : 100000, o.seed,
                                      dp);
  }
  if (c == "blackwell-projection") {
    return verify_blackwell_projection(o.points > 0 ? o.points : 500, o.seed,
                                       dp);
  }
  throw UsageError("unknown check '" + c + "'");
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const OracleReport r = run_check(o);
  const json report = {{"check", r.check},
                       {"T", r.horizon},
                       {"max_abs_err", r.max_abs_err},
                       {"pass", r.pass}};
  emit(report.dump() + "\n", o, out);
  if (!r.pass && !r.detail.empty()) err << r.detail << "\n";
  return r.pass ? kOk : kCheckFailed;
}

int cmd_play(const Options& o, std::istream& in, std::ostream& out) {
  const int T = horizon_or(o, 2);
  if (o.houses.size() != 1) throw UsageError("play takes a single --house");
  auto house = house_for(o.houses.front(), T, o);
  out << "house " << o.houses.front() << ", " << T
      << " rounds, overround " << o.gamma << "\n";
  const Transcript transcript = play(*house, "interactive", T, o, &in, &out);
  const LossVector& acc = transcript.accumulated();
  out << "settlement: team 0 wins -> pay " << acc.l0 / o.gamma
      << ", team 1 wins -> pay " << acc.l1 / o.gamma << "\n"
      << "house loss " << game_loss(transcript) << ", gain "
      << house_gain(game_loss(transcript), transcript.config()) << "\n";
  return kOk;
}

void add_common(CLI::App* sub, Options& o, bool multi_house, bool multi_T) {
  if (multi_house) {
    sub->add_option("--house", o.houses, "House strategy ids")
        ->delimiter(',');
  } else {
    sub->add_option("--house", o.houses, "House strategy id");
  }
  sub->add_option("--house-params", o.house_params,
                  "JSON parameters for the house");
  sub->add_option("--gambler", o.gamblers, "Gambler id(s)")->delimiter(',');
  auto* t = sub->add_option("--T", o.horizons, multi_T ? "Horizons" : "Horizon")
                ->delimiter(',')
                ->check(CLI::PositiveNumber);
  t->each([&o](const std::string&) { o.has_T = true; });
  sub->add_option("--gamma", o.gamma, "Overround, >= 1")
      ->check(CLI::Range(1.0, 1e300));
  sub->add_option("--seed", o.seed, "Seed")->each(
      [&o](const std::string&) { o.has_seed = true; });
  sub->add_option("--out", o.out, "Output path (default stdout)");
  sub->add_option("--format", o.format, "Transcript format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--mc-n", o.mc_n, "Monte Carlo copies")
      ->check(CLI::PositiveNumber)
      ->each([&o](const std::string&) { o.has_mc_n = true; });
  sub->add_option("--mc-seed", o.mc_seed, "Monte Carlo seed")
      ->each([&o](const std::string&) { o.has_mc_seed = true; });
  sub->add_option("--mc-eps", o.mc_eps, "Monte Carlo accuracy epsilon")
      ->each([&o](const std::string&) { o.has_mc_eps = true; });
  sub->add_option("--mc-delta", o.mc_delta, "Monte Carlo failure probability")
      ->each([&o](const std::string&) { o.has_mc_delta = true; });
  sub->add_option("--bw-delta", o.bw_delta, "Blackwell Delta in (1,2)")
      ->each([&o](const std::string&) { o.has_bw_delta = true; });
}

}  // namespace

unsigned worker_count() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BIBALANCE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) {
      n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
  }
  return n;
}

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Binary online bookmaking: optimal odds, baselines and checks",
               "bibalance"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Play one game");
  add_common(simulate, o, false, false);

  auto* sweep = app.add_subcommand("sweep", "Worst-case loss over horizons");
  add_common(sweep, o, true, true);
  sweep->add_flag("--trace", o.trace,
                  "Per-round t,phi1,phi2,region,r,bound for one game");

  auto* verify = app.add_subcommand("verify", "Run an oracle check");
  add_common(verify, o, false, false);
  verify
      ->add_option("check", o.check,
                   "optimal-loss | grid-minimax | subtree-balance | jensen | "
                   "equalizer-t2 | blackwell-partition | blackwell-projection")
      ->required();
  verify->add_option("--res", o.res, "Odds grid step for grid-minimax");
  verify->add_option("--q-grid", o.q_grid, "Bet grid size (T <= 2)");
  verify->add_option("--samples", o.samples, "Samples for jensen")
      ->check(CLI::PositiveNumber);
  verify->add_option("--points", o.points, "Points for the Blackwell checks")
      ->check(CLI::PositiveNumber);

  auto* play_cmd = app.add_subcommand("play", "Bet interactively on stdin");
  add_common(play_cmd, o, false, false);

  auto* compare = app.add_subcommand("compare", "Houses against gamblers");
  add_common(compare, o, true, false);

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1),
                                     args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*verify) return cmd_verify(o, out, err);
    if (*play_cmd) return cmd_play(o, in, out);
    if (*compare) return cmd_compare(o, out);
  } catch (const ProtocolError& e) {
    err << "protocol error: " << e.what() << "\n";
    return kProtocol;
  } catch (const GameAborted& e) {
    err << "aborted: " << e.what() << "\n";
    return kAborted;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kProtocol;
  } catch (const std::logic_error& e) {
    // Registry, domain, capacity and usage errors.
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace bibalance::cli
