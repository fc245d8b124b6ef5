#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "balltiling/io.hpp"
#include "balltiling/random.hpp"
#include "balltiling/stage.hpp"

namespace balltiling {

/// A family member with a tag that identifies it within its family.
struct Member {
  Ball ball;
  std::string tag;
};

/// Uniform query surface over ball families.
class FamilyHandle {
 public:
  virtual ~FamilyHandle() = default;

  virtual const SpaceSpec& space() const = 0;
  /// Members containing p.
  virtual std::vector<Member> locate(const SparseVec& p) const = 0;
  /// Members meeting the closed ball B(p, w).
  virtual std::vector<Member> balls_near(const SparseVec& p, const Scalar& w) const = 0;
  /// Like balls_near but limited to a materialization horizon (cell level
  /// for lazy families). Finite families ignore the horizon.
  virtual std::vector<Member> balls_near_horizon(const SparseVec& p, const Scalar& w, unsigned horizon) const {
    (void)horizon;
    return balls_near(p, w);
  }
  /// Members materialized so far.
  virtual std::vector<Member> enumerate() const = 0;
};

class ListHandle final : public FamilyHandle {
 public:
  ListHandle(SpaceSpec space, std::vector<Member> members);
  static ListHandle from_balls(SpaceSpec space, const std::vector<Ball>& balls);
  static ListHandle from_archive(const Archive& a);

  const SpaceSpec& space() const override { return space_; }
  std::vector<Member> locate(const SparseVec& p) const override;
  std::vector<Member> balls_near(const SparseVec& p, const Scalar& w) const override;
  std::vector<Member> enumerate() const override { return members_; }

 private:
  SpaceSpec space_;
  std::vector<Member> members_;
};

class WhitneyHandle final : public FamilyHandle {
 public:
  explicit WhitneyHandle(std::shared_ptr<const CoverFamily> family) : family_(std::move(family)) {}

  const SpaceSpec& space() const override { return family_->ambient(); }
  std::vector<Member> locate(const SparseVec& p) const override;
  std::vector<Member> balls_near(const SparseVec& p, const Scalar& w) const override;
  std::vector<Member> balls_near_horizon(const SparseVec& p, const Scalar& w, unsigned horizon) const override;
  std::vector<Member> enumerate() const override;

 private:
  Member member(const CellKey& c) const { return Member{family_->ball(c), to_string(c)}; }
  std::shared_ptr<const CoverFamily> family_;
};

/// Point location only: members of a c0 lift have infinitely many neighbours.
class LiftedHandle final : public FamilyHandle {
 public:
  explicit LiftedHandle(std::shared_ptr<const LiftedTiling> tiling) : tiling_(std::move(tiling)) {}

  const SpaceSpec& space() const override { return tiling_->space(); }
  std::vector<Member> locate(const SparseVec& p) const override;
  std::vector<Member> balls_near(const SparseVec& p, const Scalar& w) const override;
  std::vector<Member> enumerate() const override { return {}; }

 private:
  std::shared_ptr<const LiftedTiling> tiling_;
};

/// All built stages of a stage tiling. Neighbour queries stay within the
/// stage given by `stage` when set, else visit every built stage.
class StageHandle final : public FamilyHandle {
 public:
  explicit StageHandle(std::shared_ptr<const StageTiling> tiling, std::optional<unsigned> stage = std::nullopt)
      : tiling_(std::move(tiling)), stage_(stage) {}

  const SpaceSpec& space() const override { return tiling_->space(); }
  std::vector<Member> locate(const SparseVec& p) const override;
  std::vector<Member> balls_near(const SparseVec& p, const Scalar& w) const override;
  std::vector<Member> balls_near_horizon(const SparseVec& p, const Scalar& w, unsigned horizon) const override;
  std::vector<Member> enumerate() const override;

  static Member member(const StageBall& b);

 private:
  std::vector<unsigned> stages() const;
  std::shared_ptr<const StageTiling> tiling_;
  std::optional<unsigned> stage_;
};

struct Witness {
  std::string check;
  std::string message;
  std::optional<SparseVec> point;
  std::vector<Member> members;
  std::optional<std::size_t> limit;  // star-degree bound that was exceeded
};

struct Report {
  std::vector<std::string> checks;
  std::map<std::string, std::size_t> counts;
  std::vector<Witness> violations;
  /// Witnesses that are informative but not violations.
  std::vector<Witness> findings;
  std::map<std::size_t, std::size_t> star_histogram;
  std::optional<Scalar> max_radius;
  bool inconclusive = false;

  bool passed() const { return violations.empty() && !inconclusive; }
  void merge(const Report& other);
  std::string to_json() const;
};

/// Re-evaluates a violation witness against the family.
bool replay(const FamilyHandle& h, const Witness& w);

/// Exact pairwise interior-overlap test over a list of members; pairs are
/// prefiltered by a sweep on one coordinate.
Report check_pairwise(const SpaceSpec& space, const std::vector<Member>& members);

/// Located members at each sample are checked pairwise, then all distinct
/// located members are checked against each other.
Report verify_non_overlapping(const FamilyHandle& h, const std::vector<SparseVec>& samples);

Report verify_covering(const FamilyHandle& h, const std::vector<SparseVec>& points);

/// Number of other members meeting m.
std::size_t star_degree(const FamilyHandle& h, const Member& m);

/// Star degrees of the given members with a histogram. With `bound` set,
/// degrees above it are violations.
Report star_degree_report(const FamilyHandle& h, const std::vector<Member>& members,
                          std::optional<std::size_t> bound = std::nullopt);

/// Closed ball of Q^n for the boundary-cover fact. The Euclidean norm is
/// exact here because only squared distances are compared.
enum class BodyNorm { L1, LInf, L2 };

std::string to_string(BodyNorm n);

struct PlainBall {
  std::vector<Scalar> center;
  Scalar radius;
};

bool plain_contains(BodyNorm norm, const PlainBall& b, const std::vector<Scalar>& p);

/// Random exact points of the sphere and of the open ball.
std::vector<Scalar> sample_sphere(BodyNorm norm, const PlainBall& body, RationalSampler& rs, unsigned bits = 16);
std::vector<Scalar> sample_ball(BodyNorm norm, const PlainBall& body, RationalSampler& rs, unsigned bits = 16);

enum class Coverage { Covered, Uncovered, Undecided };

struct CoverageResult {
  Coverage verdict = Coverage::Undecided;
  std::optional<std::vector<Scalar>> witness;  // uncovered boundary point
};

/// Exact decision whether the boundary of `body` lies in the union of
/// `covers`, for dimensions 1 and 2. The boundary is split into rational
/// pieces by bisection; a piece is certified when one cover contains all of
/// it and refuted by an uncovered rational point. Empty for dimension 3.
std::optional<CoverageResult> boundary_covered_exact(BodyNorm norm, const PlainBall& body,
                                                     const std::vector<PlainBall>& covers, unsigned max_depth = 40);

struct BoundaryOptions {
  std::size_t boundary_samples = 2000;
  std::size_t interior_samples = 2000;
};

/// If the boundary of `body` is covered (exactly in dimension <= 2, by
/// samples in dimension 3), interior samples missing every cover are
/// reported: as violations when covers.size() <= dim, as findings otherwise.
/// An uncovered or undecided boundary makes the report inconclusive.
Report boundary_cover_oracle(BodyNorm norm, const PlainBall& body, const std::vector<PlainBall>& covers,
                             RationalSampler& rs, const BoundaryOptions& opts = {});

/// True when the witness point still misses every listed cover.
bool replay(BodyNorm norm, const Witness& w);

struct SharpInstance {
  BodyNorm norm;
  PlainBall body;
  std::vector<PlainBall> covers;
  Scalar radius;         // common cover radius, boundary certified covered
  Scalar center_margin;  // min ||c_i|| - radius, > 0 so the center escapes
};

/// Three equal balls around the planar unit ball with centers at 120
/// degrees; the common radius is binary-searched for a certified covered
/// boundary with an uncovered center. Empty when no placement works.
std::optional<SharpInstance> find_three_ball_escape(BodyNorm norm);

struct ProbeOptions {
  std::vector<Scalar> radii;        // shrinking neighbourhood radii
  std::vector<unsigned> horizons;   // increasing materialization horizons
};

/// Counts members meeting B(p, w) at each horizon. A probe is flagged when
/// the count still grows at the last horizon for every radius.
Report probe_singular(const FamilyHandle& h, const std::vector<SparseVec>& probes, const ProbeOptions& opts);

}  // namespace balltiling
