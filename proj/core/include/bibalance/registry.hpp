#pragma once

// String ids for house and gambler strategies.
//
// Houses: "optimal", "expected", "mc", "blackwell", "kt", "uniform", each with
// an optional JSON object of parameters:
//   optimal    {"strict": bool}   strict selects the decisive-only form
//   mc         {"N": int, "seed": int, "eps": real, "delta": real,
//               "antithetic": bool}
//   blackwell  {"delta": real}    Delta in (1,2); default from T
//
// Gamblers: "exhaustive", "greedy", "proportional", "alternating",
// "constant:<q>", "random:<seed>", "uniform-bets:<seed>", "replay:<file>",
// "interactive". A "+final" suffix applies the last-round override.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bibalance/game.hpp"

namespace bibalance {

// Unknown id or malformed parameters.
class RegistryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& house_ids();

std::unique_ptr<HouseStrategy> make_house(std::string_view id, int horizon,
                                          std::string_view params_json = "{}");

struct GamblerContext {
  int horizon = 1;
  double overround = 1.0;
  // Needed by "exhaustive".
  const HouseStrategy* house = nullptr;
  // Needed by "interactive".
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
};

std::unique_ptr<GamblerStrategy> make_gambler(std::string_view spec,
                                              const GamblerContext& context);

}  // namespace bibalance
