#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "balltiling/lift.hpp"
#include "balltiling/whitney.hpp"

namespace balltiling {

class NotYetBuiltError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A member of a stage tiling together with its provenance.
struct StageBall {
  unsigned stage = 0;
  CellKey cell;
  TailIndex k;  // lift index, cell_code(cell) + 1
  Ball ball;
};

/// Staged construction in X = Y (+)_inf c00. Stage n covers
/// Z_n = span{y_1..y_n, e_1..e_n} minus the earlier union U_{n-1} with a
/// cover of cells of Z_n and lifts it past tail offset n.
class StageTiling {
 public:
  StageTiling(SpaceSpec y_space, std::vector<SparseVec> generators, WhitneyParams params = {});
  ~StageTiling();
  StageTiling(const StageTiling&) = delete;
  StageTiling& operator=(const StageTiling&) = delete;

  const SpaceSpec& space() const { return space_; }
  const WhitneyParams& params() const { return params_; }

  /// Makes stages 1..n available.
  void build_stage(unsigned n);
  unsigned built() const { return static_cast<unsigned>(stages_.size()); }

  const CoverFamily& family(unsigned s) const;
  const SubspaceFrame& frame(unsigned s) const { return family(s).frame(); }

  StageBall member(unsigned s, const CellKey& cell) const;

  /// Smallest built n with p in Z_n.
  std::optional<unsigned> stage_of(const SparseVec& p) const;

  /// Members containing p. Stops at the first stage with a hit unless
  /// `all_stages`. Throws NotYetBuiltError when p lies in no built Z_n.
  std::vector<StageBall> locate_point(const SparseVec& p, bool all_stages = false) const;

  /// Members of stage s containing an arbitrary point of X.
  std::vector<StageBall> stage_containing(unsigned s, const SparseVec& p) const;

  /// Members of stage s meeting the closed ball B(p, w). Throws
  /// TouchesObstacleError when the projection of B(p, w) reaches C_s.
  std::vector<StageBall> stage_near(unsigned s, const SparseVec& p, const Scalar& w) const;

  /// Same, but limited to cell levels <= max_level.
  std::vector<StageBall> stage_near_horizon(unsigned s, const SparseVec& p, const Scalar& w, unsigned max_level) const;

  /// Exact membership of p in the union of stages 1..s.
  bool union_contains(const SparseVec& p, unsigned s) const;

  /// L with d - tolerance <= L <= d, d = dist(p, union of stages 1..s);
  /// empty for s = 0.
  std::optional<Scalar> union_lower_distance(const SparseVec& p, unsigned s, const Scalar& tolerance) const;

  /// Number of other members of the same stage meeting b.
  std::size_t star_degree(const StageBall& b) const;

  /// Projection onto Y_s: blocks kept, tail truncated after s.
  static SparseVec project(const SparseVec& p, unsigned s);

 private:
  struct Stage;
  const Stage& stage(unsigned s) const;

  SpaceSpec y_space_;
  SpaceSpec space_;
  std::vector<SparseVec> generators_;
  WhitneyParams params_;
  std::vector<std::unique_ptr<Stage>> stages_;
};

}  // namespace balltiling
