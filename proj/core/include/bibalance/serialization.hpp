#pragma once

// Text formats for transcripts and bi-balanced trees.
//
// Transcript JSON: {"T": int, "gamma": float, "rounds": [[r, q], ...],
//                   "loss": [l0, l1]}
// Transcript CSV:  header t,r,q,l0_cum,l1_cum, one row per round.
// Tree JSON:       {"depth": d, "x": x, "odds": {"<bitstring>": r}}
//
// Reals are written in shortest round-trip form, so a load after a save
// reproduces every value exactly.

#include <string>
#include <string_view>
#include <vector>

#include "bibalance/balance.hpp"
#include "bibalance/game.hpp"

namespace bibalance {

std::string format_real(double v);

std::string transcript_to_json(const Transcript& transcript);
// Recomputes the loss and rejects a file whose stored loss differs.
Transcript transcript_from_json(std::string_view text);

std::string transcript_to_csv(const Transcript& transcript);
// CSV carries no horizon; T is the row count.
Transcript transcript_from_csv(std::string_view text, double overround = 1.0);

std::string tree_to_json(const BalancedTree& tree);
BalancedTree tree_from_json(std::string_view text);

// Bets from a transcript (JSON or CSV) or a bare JSON array of q values.
std::vector<BetPoint> load_bets(std::string_view text);
std::vector<BetPoint> load_bets_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace bibalance
