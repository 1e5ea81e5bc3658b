#pragma once

// Bi-balanced game trees.
//
// A complete binary tree of depth d is bi-balanced when every decisive bet
// sequence that ends in team i accrues the same loss V^i for that team. The
// achievable root values form the curve (x, f_d(x)), x > d, where
//
//   f_d(x) = d (x - d + 1) / (x - d)
//
// is an involution on (d, inf). Along any decisive path one coordinate of the
// value pair is carried forward unchanged and the other is recovered with
// f_d, which gives a forward O(1)-per-round recursion for the odds.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bibalance/game.hpp"

namespace bibalance {

// Worst-case future loss per winning team at a node.
struct ValuePair {
  double v0 = 0.0;
  double v1 = 0.0;

  friend bool operator==(const ValuePair&, const ValuePair&) = default;
};

// f_depth(x). f_0 is identically 0. Throws DomainError when depth < 0 or when
// depth >= 1 and x <= depth.
double f_involution(int depth, double x);

// Value pair after observing `bet` with `depth_after` rounds still to play.
// bet=0 keeps v1 and sets v0 = f(v1); bet=1 keeps v0 and sets v1 = f(v0).
ValuePair advance_value(ValuePair v, int bet, int depth_after);

// Odds at a node with `depth_remaining` >= 1 rounds left:
// r = 1 / (v1 - f_{depth_remaining-1}(v0)). Throws InfeasibleError when the
// pair is not realizable at that depth.
OddsPoint odds_from_value(ValuePair v, int depth_remaining);

// The root value x solving x = f_T(x) with x > T, i.e. T + sqrt(T).
double root_fixed_point(int horizon);

// Absolute 1e-9 up to depth 1000, relative 1e-9 (in units of depth) beyond.
double balance_tolerance(int depth);

// Largest depth for which a tree is materialized in memory.
inline constexpr int kMaxMaterializedDepth = 24;

// Odds over every decisive prefix of length < depth. Prefixes are bit strings
// with the first bet leftmost; storage is a flat array in breadth-first order.
class BalancedTree {
 public:
  BalancedTree(int depth, double x, ValuePair root_value,
               std::vector<double> odds);

  int depth() const noexcept { return depth_; }
  double x() const noexcept { return x_; }
  const ValuePair& root_value() const noexcept { return root_value_; }
  std::size_t node_count() const noexcept { return odds_.size(); }

  double odds_at(std::string_view prefix) const;
  double odds_at(int length, std::uint64_t bits) const;
  void set_odds(std::string_view prefix, double r);

  // The depth-(depth - |prefix|) tree hanging below `prefix`, with its own
  // root value reconstructed by enumeration.
  BalancedTree subtree(std::string_view prefix) const;

  static std::size_t index_of(int length, std::uint64_t bits) noexcept {
    return (std::size_t{1} << length) - 1 + static_cast<std::size_t>(bits);
  }

 private:
  int depth_;
  double x_;
  ValuePair root_value_;
  std::vector<double> odds_;
};

// Materializes the unique bi-balanced tree with root value (x, f_depth(x)).
// Requires depth in [1, kMaxMaterializedDepth] and x > depth; an odd that
// leaves (0,1) raises InfeasibleError naming the prefix.
BalancedTree build_bibalanced_tree(int depth, double x);

struct BalanceReport {
  int depth = 0;
  std::uint64_t sequences = 0;
  // max - min of V^0 over sequences ending in 0, of V^1 over those ending in 1.
  double spread0 = 0.0;
  double spread1 = 0.0;
  // Common values (the minima of each class).
  double value0 = 0.0;
  double value1 = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Exhaustive check over all 2^depth decisive sequences by summing per-round
// losses with the stored odds.
BalanceReport verify_bibalanced(const BalancedTree& tree, double tolerance);
BalanceReport verify_bibalanced(const BalancedTree& tree);

// Same check with odds generated on the fly from the root value; for depths
// beyond the materialization guard.
BalanceReport verify_bibalanced_streaming(int depth, double x,
                                          double tolerance);

}  // namespace bibalance
