#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "balltiling/frame.hpp"
#include "balltiling/obstacle.hpp"

namespace balltiling {

/// Constants of the dyadic selection rule. A cell Q of level j with
/// circumradius R and diameter D = 2R is selected when
///   lo * D <= L(center) - R < hi * D      (j >= 1)
///   lo * D <= L(center) - R               (j == 0)
/// where L is a lower bound on the obstacle distance with tolerance kappa * R.
struct WhitneyParams {
  Scalar base_side{1};
  Scalar window_lo{2};
  Scalar window_hi{6};
  Scalar kappa{1};

  /// Throws DomainError unless hi >= 2 lo + 1 + kappa and all constants are positive.
  void validate() const;

  /// P with dist(y, C) + R < P * R for every selected ball of level >= 1.
  Scalar proximity_factor() const { return 2 * window_hi + 2 + kappa; }
};

struct CellKey {
  unsigned level = 0;
  std::vector<std::int64_t> corner;

  auto operator<=>(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept;
};

std::string to_string(const CellKey& k);

struct CellInfo {
  bool selected = false;
  /// Certified lower bound on the obstacle distance of the center; empty
  /// for an empty obstacle.
  std::optional<Scalar> lower;
};

struct CellCertificate {
  bool covers_cell = false;       // every cell vertex lies in the circumball
  bool clear_of_obstacle = false; // the closed ball misses the obstacle
};

/// Lazily materialized cover of Z \ C by circumballs of dyadic cells of a
/// frame of Z. Cell selections are memoized; the family is otherwise
/// immutable.
class CoverFamily {
 public:
  CoverFamily(SpaceSpec ambient, SubspaceFrame frame, std::shared_ptr<const Obstacle> obstacle,
              WhitneyParams params = {});

  const SpaceSpec& ambient() const { return ambient_; }
  const SubspaceFrame& frame() const { return frame_; }
  const Obstacle& obstacle() const { return *obstacle_; }
  const WhitneyParams& params() const { return params_; }
  std::size_t dim() const { return frame_.dim(); }

  Scalar side(unsigned level) const;
  Scalar circumradius(unsigned level) const;
  Scalar diameter(unsigned level) const { return 2 * circumradius(level); }

  const SparseVec& center(const CellKey& cell) const;
  Ball ball(const CellKey& cell) const { return Ball(center(cell), circumradius(cell.level)); }
  std::vector<SparseVec> vertices(const CellKey& cell) const;
  std::vector<CellKey> children(const CellKey& cell) const;
  CellKey parent(const CellKey& cell) const;

  const CellInfo& info(const CellKey& cell) const;
  bool selected(const CellKey& cell) const { return info(cell).selected; }

  /// Cells of `level` whose circumball could meet B(q, w), in frame-box order.
  std::vector<CellKey> candidate_cells(const SparseVec& q, const Scalar& w, unsigned level) const;

  /// Selected cells whose ball contains q, for q in Z. Throws
  /// ObstaclePointError for q in C and DomainError for q outside Z.
  std::vector<CellKey> locate(const SparseVec& q) const;

  /// Selected cells whose ball contains q, for any ambient q.
  std::vector<CellKey> balls_containing(const SparseVec& q) const;

  /// Selected cells whose ball meets the closed ball B(q, w). Throws
  /// TouchesObstacleError when dist(q, C) <= w.
  std::vector<CellKey> balls_near(const SparseVec& q, const Scalar& w) const;

  /// Like balls_near but restricted to levels <= max_level; never throws
  /// for neighbourhoods that reach the obstacle.
  std::vector<CellKey> balls_near_horizon(const SparseVec& q, const Scalar& w, unsigned max_level) const;

  /// Upper bound on the number of other members meeting any one member.
  std::uint64_t star_degree_bound() const;

  CellCertificate certify(const CellKey& cell) const;

  /// Selected cells among those examined so far.
  std::vector<CellKey> materialized() const;
  std::size_t cached_cells() const { return cache_.size(); }

 private:
  struct LevelWindow {
    bool level0 = true;
    unsigned first = 1;       // first level >= 1 to scan
    std::optional<unsigned> last;  // last level, empty when unbounded
  };

  std::vector<CellKey> scan(const SparseVec& q, const Scalar& w, const LevelWindow& window) const;
  LevelWindow window_for(const Scalar& lower, const Scalar& tolerance, const Scalar& w, bool bounded_below) const;

  SpaceSpec ambient_;
  SubspaceFrame frame_;
  std::shared_ptr<const Obstacle> obstacle_;
  WhitneyParams params_;
  Scalar unit_circumradius_;
  std::vector<Scalar> row_dual_;
  mutable std::unordered_map<CellKey, CellInfo, CellKeyHash> cache_;
  mutable std::unordered_map<CellKey, SparseVec, CellKeyHash> centers_;
};

}  // namespace balltiling
