#include "balltiling/obstacle.hpp"

namespace balltiling {

BallListObstacle::BallListObstacle(SpaceSpec space, std::vector<Ball> balls)
    : space_(std::move(space)), balls_(std::move(balls)) {
  for (const auto& b : balls_) space_.check_supported(b.center);
}

bool BallListObstacle::contains(const SparseVec& p) const {
  for (const auto& b : balls_)
    if (ball_contains(space_, b, p)) return true;
  return false;
}

Scalar BallListObstacle::distance(const SparseVec& p) const {
  if (balls_.empty()) throw DomainError("distance to an empty obstacle");
  Scalar best = dist_point_ball(space_, p, balls_.front());
  for (std::size_t i = 1; i < balls_.size() && best > 0; ++i) best = min(best, dist_point_ball(space_, p, balls_[i]));
  return best;
}

std::optional<Scalar> BallListObstacle::lower_distance(const SparseVec& p, const Scalar&) const {
  if (balls_.empty()) return std::nullopt;
  return distance(p);
}

std::vector<Ball> BallListObstacle::balls_near(const SparseVec& p, const Scalar& radius) const {
  std::vector<Ball> out;
  for (const auto& b : balls_)
    if (dist_point_ball(space_, p, b) <= radius) out.push_back(b);
  return out;
}

}  // namespace balltiling
