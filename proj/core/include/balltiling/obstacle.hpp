#pragma once

#include <optional>
#include <vector>

#include "balltiling/ball.hpp"

namespace balltiling {

/// A query point lies in the obstacle.
class ObstaclePointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A query neighbourhood reaches the obstacle, where the cover accumulates.
class TouchesObstacleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Closed obstacle set made of balls. Distances are measured in the ambient
/// space the obstacle was built for.
class Obstacle {
 public:
  virtual ~Obstacle() = default;

  /// True when the obstacle is the empty set.
  virtual bool empty() const = 0;

  /// Exact membership in the (closed) union.
  virtual bool contains(const SparseVec& p) const = 0;

  /// A value L with dist(p) - tolerance <= L <= dist(p). Returns nullopt
  /// only for the empty obstacle (infinite distance).
  virtual std::optional<Scalar> lower_distance(const SparseVec& p, const Scalar& tolerance) const = 0;
};

class EmptyObstacle final : public Obstacle {
 public:
  bool empty() const override { return true; }
  bool contains(const SparseVec&) const override { return false; }
  std::optional<Scalar> lower_distance(const SparseVec&, const Scalar&) const override { return std::nullopt; }
};

/// Finite union of balls; all answers are exact.
class BallListObstacle final : public Obstacle {
 public:
  BallListObstacle(SpaceSpec space, std::vector<Ball> balls);

  bool empty() const override { return balls_.empty(); }
  bool contains(const SparseVec& p) const override;
  std::optional<Scalar> lower_distance(const SparseVec& p, const Scalar& tolerance) const override;

  Scalar distance(const SparseVec& p) const;
  /// Members within distance R of p.
  std::vector<Ball> balls_near(const SparseVec& p, const Scalar& radius) const;
  const std::vector<Ball>& balls() const { return balls_; }

 private:
  SpaceSpec space_;
  std::vector<Ball> balls_;
};

}  // namespace balltiling
