#pragma once

// Blackwell-approachability baseline. The house steers the time-averaged loss
// vector toward the target set
//
//   S = { x >= 0 : (x - 1)·lambda1 <= 0, (x - 1)·lambda2 <= 0 },
//
// a quadrilateral with corners (0,0), (0,Delta), (1,1), (Delta,0). Vectors in
// this module are ordered (outcome 0, outcome 1).

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "bibalance/game.hpp"

namespace bibalance {

using Vec2 = std::array<double, 2>;

double dot(const Vec2& a, const Vec2& b) noexcept;

// Delta in (1, 2).
class DeltaParam {
 public:
  explicit DeltaParam(double delta_cap);
  double value() const noexcept { return delta_; }

 private:
  double delta_;
};

struct LambdaVectors {
  Vec2 lambda1;
  Vec2 lambda1_perp;
  Vec2 lambda2;
  Vec2 lambda2_perp;
};

LambdaVectors lambda_vectors(DeltaParam dp);

enum class Region { S, A1_minus, A1_plus, A2_minus, A2_plus, A3 };

std::string_view region_name(Region region);

// Raw half-plane predicates on y = x - (1,1); each region is a conjunction of
// these, so the partition can be checked independently of classify_region.
struct RegionPredicates {
  double along1;  // y·lambda1
  double along2;  // y·lambda2
  double perp1;   // y·lambda1_perp
  double perp2;   // y·lambda2_perp
  // Coordinate of the foot of the perpendicular on the line through (1,1)
  // with direction lambda_i_perp, in units of lambda_i_perp.
  double foot1;
  double foot2;

  bool in_S() const noexcept { return along1 <= 0.0 && along2 <= 0.0; }
  bool in_A1() const noexcept { return along1 > 0.0 && perp1 <= 0.0; }
  bool in_A2() const noexcept { return along2 > 0.0 && perp2 <= 0.0; }
  bool in_A3() const noexcept { return perp1 > 0.0 && perp2 > 0.0; }
};

RegionPredicates region_predicates(const Vec2& x, DeltaParam dp);

Region classify_region(const Vec2& x, DeltaParam dp);

// Euclidean projection onto S.
Vec2 project_to_S(const Vec2& x, DeltaParam dp);

// Next odds as a probability vector (r(0), r(1)) from the running average
// loss. The minimum component is at least (Delta - 1)/Delta.
Vec2 blackwell_next_odds(const Vec2& avg_loss, DeltaParam dp);

// 1 + delta_T with delta_T = (2/T)^{1/4} / (1 - (2/T)^{1/4}). Needs T > 32.
DeltaParam delta_for_horizon(int horizon);

// Delta + sqrt(2/t) Delta^2 / (Delta - 1).
double anytime_bound(int t, DeltaParam dp);

class BlackwellHouse final : public HouseStrategy {
 public:
  explicit BlackwellHouse(int horizon);
  BlackwellHouse(int horizon, DeltaParam dp);

  double next_odds(std::span<const BetPoint> history) override;
  int horizon() const override { return horizon_; }
  std::string name() const override { return "blackwell"; }
  std::unique_ptr<HouseStrategy> clone() const override {
    return std::make_unique<BlackwellHouse>(*this);
  }

  DeltaParam delta() const noexcept { return dp_; }
  // Average loss after the rounds observed so far; (0,0) before any.
  Vec2 average_loss() const noexcept;
  Region last_region() const noexcept { return last_region_; }

 private:
  int horizon_;
  DeltaParam dp_;
  int served_ = 0;
  int observed_ = 0;
  Vec2 loss_sum_{0.0, 0.0};
  Vec2 last_odds_{0.5, 0.5};
  Region last_region_ = Region::S;
};

}  // namespace bibalance
