#pragma once

// Brute-force checks that reproduce the closed-form results without going
// through the involution or the value-pair recursion.

#include <cstdint>
#include <string>
#include <string_view>

#include "bibalance/blackwell.hpp"
#include "bibalance/game.hpp"

namespace bibalance {

struct OracleReport {
  std::string check;
  int horizon = 0;
  double max_abs_err = 0.0;
  bool pass = false;
  // Check-specific extras.
  double value = 0.0;
  std::uint64_t cases = 0;
  std::string detail;
};

// Odds grid k * resolution strictly inside (0,1).
struct GridSpec {
  double resolution = 1e-3;
  int horizon = 1;
  // When > 0 the gambler picks q from {0, 1/m, ..., 1} with m = q_grid
  // instead of {0,1}. Only for T <= 2.
  int q_grid = 0;

  GridSpec() = default;
  GridSpec(double resolution, int horizon, int q_grid = 0);
};

// min over grid odds, max over bets, by backward induction from the root.
double grid_minimax(const GridSpec& spec);

struct EqualizerT2 {
  double r1 = 0.0;
  double r2_after0 = 0.0;
  double r2_after1 = 0.0;
  double loss = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Solves the four T=2 equalization equations: bisection on the common loss
// over (2, 6) until the bracket is below 1e-12.
EqualizerT2 equalizer_solve_T2();

// Consistency residual r1 + (1 - r1) - 1 implied by a common loss `target`;
// zero only at the equalizing loss.
double equalizer_residual_T2(double target);

// The optimal decisive strategy against all 2^T decisive sequences: max |loss - (T + sqrt T)|,
// and the final bet's coordinate is the strict maximum. T <= 22.
OracleReport verify_optimal_loss(int horizon);

// Future loss pair (V0, V1) of the optimal strategy's sub-tree below `prefix`,
// by enumerating its continuations.
struct SubtreeValue {
  double v0 = 0.0;
  double v1 = 0.0;
  double spread0 = 0.0;
  double spread1 = 0.0;
};
SubtreeValue optimal_subtree_value(int horizon, std::string_view prefix);

// Every internal node of the optimal tree roots a bi-balanced sub-tree whose
// value pair lies on (V0 - d)(V1 - d) = d. T <= 12.
OracleReport verify_subtree_balance(int horizon);

// Uniform q^T against the expected-skeleton house; every loss must stay at or
// below T + sqrt T + 1e-9. T <= 12.
OracleReport verify_jensen_domination(int horizon, int samples,
                                      std::uint64_t seed);

// Euclidean projection onto S by exhaustive search over an n x n bilinear grid
// of the quadrilateral (0,0), (Delta,0), (1,1), (0,Delta).
Vec2 grid_project_to_S(const Vec2& x, DeltaParam dp, int n = 2000);

// Random points in [0, extent]^2 each satisfy exactly one region predicate.
OracleReport verify_blackwell_partition(int points, std::uint64_t seed,
                                        DeltaParam dp, double extent = 10.0);

// Max distance between project_to_S and grid_project_to_S over random points
// in [0, extent]^2; passes within 2e-3.
OracleReport verify_blackwell_projection(int points, std::uint64_t seed,
                                         DeltaParam dp, int grid = 2000,
                                         double extent = 3.0);

}  // namespace bibalance
