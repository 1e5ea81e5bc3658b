#include "bibalance/balance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "bibalance/errors.hpp"

namespace bibalance {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string prefix_string(int length, std::uint64_t bits) {
  std::string s(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i) {
    if ((bits >> (length - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint64_t parse_prefix(std::string_view prefix) {
  std::uint64_t bits = 0;
  for (char c : prefix) {
    if (c != '0' && c != '1') {
      throw DomainError("prefix must be a bit string, got '" +
                        std::string(prefix) + "'");
    }
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return bits;
}

// Tracks min/max of V^i across leaves ending in i.
struct SpreadAccumulator {
  double lo[2] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[2] = {-std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  std::uint64_t leaves = 0;

  void add(int last_bit, const LossVector& acc) {
    const double v = acc[last_bit];
    lo[last_bit] = std::min(lo[last_bit], v);
    hi[last_bit] = std::max(hi[last_bit], v);
    ++leaves;
  }

  BalanceReport report(int depth, double tolerance) const {
    BalanceReport out;
    out.depth = depth;
    out.sequences = leaves;
    out.spread0 = hi[0] - lo[0];
    out.spread1 = hi[1] - lo[1];
    out.value0 = lo[0];
    out.value1 = lo[1];
    out.tolerance = tolerance;
    out.pass = out.spread0 <= tolerance && out.spread1 <= tolerance;
    return out;
  }
};

}  // namespace

double f_involution(int depth, double x) {
  if (depth < 0) throw DomainError("depth must be >= 0");
  if (depth == 0) return 0.0;
  const double d = depth;
  if (!(x > d)) {
    throw DomainError("f_" + std::to_string(depth) + " needs x > " +
                      std::to_string(depth) + ", got " + fmt(x));
  }
  return d * (x - (d - 1.0)) / (x - d);
}

ValuePair advance_value(ValuePair v, int bet, int depth_after) {
  if (bet == 0) return {f_involution(depth_after, v.v1), v.v1};
  if (bet == 1) return {v.v0, f_involution(depth_after, v.v0)};
  throw DecisiveDomainError("bet must be 0 or 1");
}

OddsPoint odds_from_value(ValuePair v, int depth_remaining) {
  if (depth_remaining < 1) throw DomainError("depth_remaining must be >= 1");
  double hypothetical_v1 = 0.0;
  try {
    hypothetical_v1 = f_involution(depth_remaining - 1, v.v0);
  } catch (const DomainError& e) {
    throw InfeasibleError(std::string("value pair not achievable: ") +
                          e.what());
  }
  const double r = 1.0 / (v.v1 - hypothetical_v1);
  if (!(r > 0.0 && r < 1.0)) {
    throw InfeasibleError("value pair (" + fmt(v.v0) + ", " + fmt(v.v1) +
                          ") gives odds " + fmt(r) + " at depth " +
                          std::to_string(depth_remaining));
  }
  return OddsPoint(r);
}

double root_fixed_point(int horizon) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  const double T = horizon;
  return T + std::sqrt(T);
}

double balance_tolerance(int depth) {
  return depth <= 1000 ? 1e-9 : 1e-9 * static_cast<double>(depth);
}

BalancedTree::BalancedTree(int depth, double x, ValuePair root_value,
                           std::vector<double> odds)
    : depth_(depth), x_(x), root_value_(root_value), odds_(std::move(odds)) {
  if (odds_.size() != (std::size_t{1} << depth_) - 1) {
    throw DomainError("odds table size does not match depth");
  }
}

double BalancedTree::odds_at(int length, std::uint64_t bits) const {
  if (length < 0 || length >= depth_) {
    throw DomainError("prefix length " + std::to_string(length) +
                      " outside tree of depth " + std::to_string(depth_));
  }
  return odds_[index_of(length, bits)];
}

double BalancedTree::odds_at(std::string_view prefix) const {
  return odds_at(static_cast<int>(prefix.size()), parse_prefix(prefix));
}

void BalancedTree::set_odds(std::string_view prefix, double r) {
  const int length = static_cast<int>(prefix.size());
  if (length >= depth_) throw DomainError("prefix is not an internal node");
  odds_[index_of(length, parse_prefix(prefix))] = OddsPoint(r).value();
}

BalancedTree BalancedTree::subtree(std::string_view prefix) const {
  const int k = static_cast<int>(prefix.size());
  if (k >= depth_) throw DomainError("prefix is not an internal node");
  const std::uint64_t base = parse_prefix(prefix);
  const int sub_depth = depth_ - k;
  std::vector<double> sub((std::size_t{1} << sub_depth) - 1);
  for (int len = 0; len < sub_depth; ++len) {
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
      sub[index_of(len, b)] = odds_[index_of(k + len, (base << len) | b)];
    }
  }
  // Root value read off the all-zeros and all-ones paths.
  ValuePair root;
  for (int len = 0; len < sub_depth; ++len) {
    root.v0 += 1.0 / (1.0 - sub[index_of(len, 0)]);
    root.v1 += 1.0 / sub[index_of(len, (std::uint64_t{1} << len) - 1)];
  }
  return BalancedTree(sub_depth, root.v0, root, std::move(sub));
}

BalancedTree build_bibalanced_tree(int depth, double x) {
  if (depth < 1 || depth > kMaxMaterializedDepth) {
    throw CapacityError("tree depth must be in [1, " +
                        std::to_string(kMaxMaterializedDepth) + "], got " +
                        std::to_string(depth));
  }
  if (!(x > depth)) {
    throw InfeasibleError("root value x = " + fmt(x) + " must exceed depth " +
                          std::to_string(depth));
  }
  const ValuePair root{x, f_involution(depth, x)};
  std::vector<double> odds((std::size_t{1} << depth) - 1);

  // Preorder walk, so the first violation reported is the lexicographically
  // smallest prefix.
  std::function<void(int, std::uint64_t, ValuePair)> walk =
      [&](int length, std::uint64_t bits, ValuePair v) {
        const int remaining = depth - length;
        try {
          odds[BalancedTree::index_of(length, bits)] =
              odds_from_value(v, remaining).value();
        } catch (const InfeasibleError& e) {
          throw InfeasibleError("infeasible node '" +
                                prefix_string(length, bits) + "': " + e.what());
        }
        if (remaining == 1) return;
        for (int bet = 0; bet <= 1; ++bet) {
          walk(length + 1, (bits << 1) | static_cast<std::uint64_t>(bet),
               advance_value(v, bet, remaining - 1));
        }
      };
  walk(0, 0, root);
  return BalancedTree(depth, x, root, std::move(odds));
}

BalanceReport verify_bibalanced(const BalancedTree& tree, double tolerance) {
  SpreadAccumulator acc;
  const int depth = tree.depth();
  std::function<void(int, std::uint64_t, LossVector)> walk =
      [&](int length, std::uint64_t bits, LossVector loss) {
        const double r = tree.odds_at(length, bits);
        for (int bet = 0; bet <= 1; ++bet) {
          LossVector next = loss;
          if (bet == 0) {
            next.l0 += 1.0 / (1.0 - r);
          } else {
            next.l1 += 1.0 / r;
          }
          if (length + 1 == depth) {
            acc.add(bet, next);
          } else {
            walk(length + 1, (bits << 1) | static_cast<std::uint64_t>(bet),
                 next);
          }
        }
      };
  walk(0, 0, LossVector{});
  return acc.report(depth, tolerance);
}

BalanceReport verify_bibalanced(const BalancedTree& tree) {
  return verify_bibalanced(tree, balance_tolerance(tree.depth()));
}

BalanceReport verify_bibalanced_streaming(int depth, double x,
                                          double tolerance) {
  if (depth < 1) throw DomainError("depth must be >= 1");
  if (depth > 40) throw CapacityError("streaming verification capped at 40");
  if (!(x > depth)) {
    throw InfeasibleError("root value must exceed depth");
  }
  SpreadAccumulator acc;
  std::function<void(int, ValuePair, LossVector)> walk =
      [&](int length, ValuePair v, LossVector loss) {
        const int remaining = depth - length;
        const double r = odds_from_value(v, remaining).value();
        for (int bet = 0; bet <= 1; ++bet) {
          LossVector next = loss;
          if (bet == 0) {
            next.l0 += 1.0 / (1.0 - r);
          } else {
            next.l1 += 1.0 / r;
          }
          if (remaining == 1) {
            acc.add(bet, next);
          } else {
            walk(length + 1, advance_value(v, bet, remaining - 1), next);
          }
        }
      };
  walk(0, ValuePair{x, f_involution(depth, x)}, LossVector{});
  return acc.report(depth, tolerance);
}

}  // namespace bibalance
