#pragma once

#include <memory>
#include <vector>

#include "balltiling/ball.hpp"
#include "balltiling/whitney.hpp"

namespace balltiling {

/// B(y, r) lifted with index k >= 1 past tail offset m:
///   center y + r e_{m+1} + ... + r e_{m+k-1} - r e_{m+k}, radius r.
Ball lift_ball(const Ball& base, const TailIndex& k, const TailIndex& offset);

/// Lifts a finite family, the i-th ball (1-based) with index i.
std::vector<Ball> lift_ball_family(const std::vector<Ball>& family, const TailIndex& offset);

/// Injective code of a dyadic cell; level 0 with zero corner has code 0.
TailIndex cell_code(const CellKey& cell);
CellKey cell_from_code(const TailIndex& code, std::size_t dim);

/// Center of a radius-1 sup ball through p whose nonzero entries are odd
/// integers; p must be a pure tail vector.
SparseVec sphere_decomposition_center(const SparseVec& p);

/// Nearest even integer; an odd integer rounds down.
mpz_class round_to_even(const Scalar& t);

/// Tiling of a space X without tail by balls of positive radius.
class BaseTiling {
 public:
  virtual ~BaseTiling() = default;
  virtual const SpaceSpec& space() const = 0;
  /// Members containing x.
  virtual std::vector<Ball> locate(const SparseVec& x) const = 0;
};

/// R tiled by [a + 2hk - h, a + 2hk + h], stored in a one-dimensional block.
class IntervalTiling final : public BaseTiling {
 public:
  explicit IntervalTiling(std::string block = "x", Scalar origin = 0, Scalar half_width = 1);
  const SpaceSpec& space() const override { return space_; }
  std::vector<Ball> locate(const SparseVec& x) const override;
  Ball member(const mpz_class& k) const;

 private:
  SpaceSpec space_;
  std::string block_;
  Scalar origin_, half_;
};

/// Explicit finite list; locate scans the list.
class ListTiling final : public BaseTiling {
 public:
  ListTiling(SpaceSpec space, std::vector<Ball> balls);
  const SpaceSpec& space() const override { return space_; }
  std::vector<Ball> locate(const SparseVec& x) const override;

 private:
  SpaceSpec space_;
  std::vector<Ball> balls_;
};

/// Tiling of X (+)_inf c0 by the balls B((x_k, r_k z), r_k), z in (2Z)^(N)
/// finitely supported.
class LiftedTiling {
 public:
  explicit LiftedTiling(std::shared_ptr<const BaseTiling> base);

  const SpaceSpec& space() const { return space_; }
  const BaseTiling& base() const { return *base_; }

  /// One lifted ball per base ball containing the block part of p.
  std::vector<Ball> locate_all(const SparseVec& p) const;
  Ball locate(const SparseVec& p) const;

 private:
  std::shared_ptr<const BaseTiling> base_;
  SpaceSpec space_;
};

}  // namespace balltiling
