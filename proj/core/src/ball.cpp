#include "balltiling/ball.hpp"

namespace balltiling {

Ball::Ball(SparseVec c, Scalar r) : center(std::move(c)), radius(std::move(r)) {
  if (radius < 0) throw DomainError("negative radius");
}

bool ball_contains(const SpaceSpec& s, const Ball& b, const SparseVec& p) {
  return distance(p, b.center, s) <= b.radius;
}

bool balls_intersect(const SpaceSpec& s, const Ball& a, const Ball& b) {
  return distance(a.center, b.center, s) <= a.radius + b.radius;
}

bool balls_overlap(const SpaceSpec& s, const Ball& a, const Ball& b) {
  if (a.degenerate() || b.degenerate()) return false;
  return distance(a.center, b.center, s) < a.radius + b.radius;
}

Scalar dist_point_ball(const SpaceSpec& s, const SparseVec& p, const Ball& b) {
  Scalar d = distance(p, b.center, s) - b.radius;
  return d < 0 ? Scalar(0) : d;
}

std::optional<Ball> restrict_ball_l1(const SpaceSpec& s, const Ball& b, const std::set<std::uint32_t>& keep) {
  if (s.blocks().size() != 1 || s.has_tail() || s.blocks()[0].kind != NormKind::L1)
    throw DomainError("restrict_ball_l1 needs a single l1 block space");
  s.check_supported(b.center);
  const Block& block = s.blocks()[0];
  SparseVec kept;
  Scalar dropped(0);
  for (const auto& [c, x] : b.center.block_entries()) {
    if (keep.count(c.index) != 0) {
      kept.set_block(block.name, c.index, x);
    } else {
      dropped += abs(x);
    }
  }
  if (dropped > b.radius) return std::nullopt;
  return Ball(std::move(kept), b.radius - dropped);
}

std::optional<Ball> restrict_ball_inf(const SpaceSpec& s, const Ball& b, const SubSum& keep) {
  s.check_supported(b.center);
  for (const auto& name : keep.blocks)
    if (s.find(name) == nullptr) throw DomainError("sub-sum block '" + name + "' not in space");
  if (norm(keep.discarded(b.center), s) > b.radius) return std::nullopt;
  return Ball(keep.kept(b.center), b.radius);
}

}  // namespace balltiling
