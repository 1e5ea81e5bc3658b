#include "bibalance/blackwell.hpp"

#include <algorithm>
#include <cmath>

#include "bibalance/errors.hpp"

namespace bibalance {

namespace {

// Coordinate of the foot of the perpendicular from (1,1)+y onto the line
// (1,1) + s * dir.
double foot(const Vec2& y, const Vec2& dir) noexcept {
  return dot(y, dir) / dot(dir, dir);
}

}  // namespace

double dot(const Vec2& a, const Vec2& b) noexcept {
  return a[0] * b[0] + a[1] * b[1];
}

DeltaParam::DeltaParam(double delta_cap) : delta_(delta_cap) {
  if (!(delta_cap > 1.0 && delta_cap < 2.0)) {
    throw DomainError("Delta must lie in (1, 2)");
  }
}

LambdaVectors lambda_vectors(DeltaParam dp) {
  const double d = dp.value();
  return LambdaVectors{
      {1.0 - 1.0 / d, 1.0 / d},
      {1.0, 1.0 - d},
      {1.0 / d, 1.0 - 1.0 / d},
      {1.0 - d, 1.0},
  };
}

std::string_view region_name(Region region) {
  switch (region) {
    case Region::S: return "S";
    case Region::A1_minus: return "A1-";
    case Region::A1_plus: return "A1+";
    case Region::A2_minus: return "A2-";
    case Region::A2_plus: return "A2+";
    case Region::A3: return "A3";
  }
  return "?";
}

RegionPredicates region_predicates(const Vec2& x, DeltaParam dp) {
  const LambdaVectors lv = lambda_vectors(dp);
  const Vec2 y{x[0] - 1.0, x[1] - 1.0};
  return RegionPredicates{
      dot(y, lv.lambda1),      dot(y, lv.lambda2),
      dot(y, lv.lambda1_perp), dot(y, lv.lambda2_perp),
      foot(y, lv.lambda1_perp), foot(y, lv.lambda2_perp),
  };
}

Region classify_region(const Vec2& x, DeltaParam dp) {
  const RegionPredicates p = region_predicates(x, dp);
  if (p.in_S()) return Region::S;
  if (p.in_A1()) return p.foot1 < -1.0 ? Region::A1_minus : Region::A1_plus;
  if (p.in_A2()) return p.foot2 < -1.0 ? Region::A2_minus : Region::A2_plus;
  return Region::A3;
}

Vec2 project_to_S(const Vec2& x, DeltaParam dp) {
  const LambdaVectors lv = lambda_vectors(dp);
  const RegionPredicates p = region_predicates(x, dp);
  const double d = dp.value();
  switch (classify_region(x, dp)) {
    case Region::S: return x;
    case Region::A1_minus: return {0.0, d};
    case Region::A2_minus: return {d, 0.0};
    case Region::A3: return {1.0, 1.0};
    case Region::A1_plus:
      return {1.0 + p.foot1 * lv.lambda1_perp[0],
              1.0 + p.foot1 * lv.lambda1_perp[1]};
    case Region::A2_plus:
      return {1.0 + p.foot2 * lv.lambda2_perp[0],
              1.0 + p.foot2 * lv.lambda2_perp[1]};
  }
  return x;
}

Vec2 blackwell_next_odds(const Vec2& avg_loss, DeltaParam dp) {
  const LambdaVectors lv = lambda_vectors(dp);
  switch (classify_region(avg_loss, dp)) {
    case Region::S: return {0.5, 0.5};
    case Region::A1_minus:
    case Region::A1_plus: return lv.lambda1;
    case Region::A2_minus:
    case Region::A2_plus: return lv.lambda2;
    case Region::A3: break;
  }
  const Vec2 y{avg_loss[0] - 1.0, avg_loss[1] - 1.0};
  if (!(y[0] > 0.0 && y[1] > 0.0)) {
    throw InfeasibleError("A3 direction is not a probability vector");
  }
  const double norm = y[0] + y[1];
  return {y[0] / norm, y[1] / norm};
}

DeltaParam delta_for_horizon(int horizon) {
  if (horizon <= 32) {
    throw DomainError("the Delta schedule needs T > 32, got T = " +
                      std::to_string(horizon));
  }
  const double u = std::pow(2.0 / horizon, 0.25);
  return DeltaParam(1.0 + u / (1.0 - u));
}

double anytime_bound(int t, DeltaParam dp) {
  if (t < 1) throw DomainError("anytime bound needs t >= 1");
  const double d = dp.value();
  return d + std::sqrt(2.0 / t) * d * d / (d - 1.0);
}

BlackwellHouse::BlackwellHouse(int horizon)
    : BlackwellHouse(horizon, delta_for_horizon(horizon)) {}

BlackwellHouse::BlackwellHouse(int horizon, DeltaParam dp)
    : horizon_(horizon), dp_(dp) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
}

Vec2 BlackwellHouse::average_loss() const noexcept {
  if (observed_ == 0) return {0.0, 0.0};
  return {loss_sum_[0] / observed_, loss_sum_[1] / observed_};
}

double BlackwellHouse::next_odds(std::span<const BetPoint> history) {
  if (static_cast<int>(history.size()) >= horizon_) {
    throw DomainError("odds requested past the horizon");
  }
  if (static_cast<int>(history.size()) != served_) {
    throw DomainError("odds must be requested once per round, in order");
  }
  ++served_;
  if (!history.empty()) {
    const LossVector f = round_loss(OddsPoint(last_odds_[1]), history.back());
    loss_sum_[0] += f.l0;
    loss_sum_[1] += f.l1;
    ++observed_;
  }
  const Vec2 avg = average_loss();
  last_region_ = classify_region(avg, dp_);
  last_odds_ = blackwell_next_odds(avg, dp_);
  return last_odds_[1];
}

}  // namespace bibalance
