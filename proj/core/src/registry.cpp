#include "bibalance/registry.hpp"

#include <charconv>

#include "json.hpp"

#include "bibalance/adversaries.hpp"
#include "bibalance/blackwell.hpp"
#include "bibalance/errors.hpp"
#include "bibalance/monte_carlo.hpp"
#include "bibalance/serialization.hpp"
#include "bibalance/strategies.hpp"

namespace bibalance {

namespace {

using nlohmann::json;

json parse_params(std::string_view text) {
  if (text.empty()) return json::object();
  json params;
  try {
    params = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RegistryError(std::string("house parameters are not JSON: ") + e.what());
  }
  if (!params.is_object()) {
    throw RegistryError("house parameters must be a JSON object");
  }
  return params;
}

template <typename T>
T param(const json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    throw RegistryError(std::string("bad value for parameter '") + key + "'");
  }
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t seed = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw RegistryError("bad seed '" + std::string(text) + "'");
  }
  return seed;
}

}  // namespace

const std::vector<std::string>& house_ids() {
  static const std::vector<std::string> ids{"optimal", "expected", "mc",
                                            "blackwell", "kt", "uniform"};
  return ids;
}

std::unique_ptr<HouseStrategy> make_house(std::string_view id, int horizon,
                                          std::string_view params_json) {
  const json params = parse_params(params_json);
  if (horizon < 1) throw RegistryError("T must be >= 1");
  if (id == "optimal") {
    if (param(params, "strict", false)) {
      return std::make_unique<OptimalDecisiveHouse>(horizon);
    }
    // Identical to the decisive strategy on decisive bets and defined on the rest.
    return std::make_unique<ExpectedSkeletonHouse>(horizon, "optimal");
  }
  if (id == "expected") return std::make_unique<ExpectedSkeletonHouse>(horizon);
  if (id == "mc") {
    MCConfig config;
    config.copies = param<std::int64_t>(params, "N", config.copies);
    config.seed = param<std::uint64_t>(params, "seed", config.seed);
    if (params.contains("eps")) config.epsilon = param(params, "eps", 0.0);
    if (params.contains("delta")) config.delta = param(params, "delta", 0.0);
    config.antithetic = param(params, "antithetic", false);
    return std::make_unique<MonteCarloHouse>(horizon, config);
  }
  if (id == "blackwell") {
    if (params.contains("delta")) {
      return std::make_unique<BlackwellHouse>(
          horizon, DeltaParam(param(params, "delta", 0.0)));
    }
    return std::make_unique<BlackwellHouse>(horizon);
  }
  if (id == "kt") return std::make_unique<KtHouse>(horizon);
  if (id == "uniform") return std::make_unique<UniformHouse>(horizon);
  throw RegistryError("unknown house '" + std::string(id) + "'");
}

std::unique_ptr<GamblerStrategy> make_gambler(std::string_view spec,
                                              const GamblerContext& context) {
  constexpr std::string_view kFinal = "+final";
  if (spec.size() > kFinal.size() && spec.ends_with(kFinal)) {
    spec.remove_suffix(kFinal.size());
    return std::make_unique<FinalRoundOverride>(make_gambler(spec, context));
  }
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  if (kind == "greedy" && !has_arg) return std::make_unique<GreedyGambler>();
  if (kind == "proportional" && !has_arg) {
    return std::make_unique<ProportionalGambler>();
  }
  if (kind == "alternating" && !has_arg) {
    return std::make_unique<AlternatingGambler>();
  }
  if (kind == "exhaustive" && !has_arg) {
    if (!context.house) throw RegistryError("exhaustive gambler needs a house");
    return make_exhaustive_gambler(*context.house);
  }
  if (kind == "constant" && has_arg) {
    double q = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), q);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() ||
        !(q >= 0.0 && q <= 1.0)) {
      throw RegistryError("constant gambler needs q in [0,1], got '" +
                          std::string(arg) + "'");
    }
    return std::make_unique<ConstantGambler>(q);
  }
  if (kind == "random" && has_arg) {
    return std::make_unique<RandomGambler>(parse_seed(arg));
  }
  if (kind == "uniform-bets" && has_arg) {
    return std::make_unique<UniformBetGambler>(parse_seed(arg));
  }
  if (kind == "replay" && has_arg) {
    try {
      return std::make_unique<ReplayGambler>(load_bets_file(std::string(arg)));
    } catch (const DomainError& e) {
      throw RegistryError(std::string("replay: ") + e.what());
    }
  }
  if (kind == "interactive" && !has_arg) {
    if (!context.in || !context.out) {
      throw RegistryError("interactive gambler needs input and output streams");
    }
    return std::make_unique<InteractiveGambler>(*context.in, *context.out,
                                                context.overround);
  }
  throw RegistryError("unknown gambler '" + std::string(spec) + "'");
}

}  // namespace bibalance
