#pragma once

#include <optional>
#include <set>
#include <string>

#include "balltiling/space.hpp"

namespace balltiling {

/// Closed ball; radius 0 is a degenerate ball (a single point).
struct Ball {
  SparseVec center;
  Scalar radius;

  Ball() = default;
  Ball(SparseVec c, Scalar r);

  bool degenerate() const { return radius == 0; }
  friend bool operator==(const Ball& a, const Ball& b) = default;
};

bool ball_contains(const SpaceSpec& s, const Ball& b, const SparseVec& p);

/// ||c1 - c2|| <= r1 + r2.
bool balls_intersect(const SpaceSpec& s, const Ball& a, const Ball& b);

/// Interiors meet: ||c1 - c2|| < r1 + r2 with both radii positive.
bool balls_overlap(const SpaceSpec& s, const Ball& a, const Ball& b);

/// max(0, ||p - c|| - r).
Scalar dist_point_ball(const SpaceSpec& s, const SparseVec& p, const Ball& b);

/// Intersection of a ball of a single l1 block with the coordinate subspace
/// spanned by `keep` (indices of that block). Returns the ball
/// B(x1, r - ||x2||_1) or nothing when ||x2||_1 > r.
std::optional<Ball> restrict_ball_l1(const SpaceSpec& s, const Ball& b, const std::set<std::uint32_t>& keep);

/// Intersection of a ball of a sup-combined space with a sub-sum. The radius
/// is unchanged; empty when the discarded part of the center exceeds it.
std::optional<Ball> restrict_ball_inf(const SpaceSpec& s, const Ball& b, const SubSum& keep);

}  // namespace balltiling
