#include "balltiling/stage.hpp"

#include <queue>

namespace balltiling {

namespace {

constexpr long kMaxTailReach = 4096;

class PriorUnion final : public Obstacle {
 public:
  PriorUnion(const StageTiling* tiling, unsigned stage) : tiling_(tiling), stage_(stage) {}

  bool empty() const override { return stage_ == 1; }
  bool contains(const SparseVec& p) const override { return stage_ > 1 && tiling_->union_contains(p, stage_ - 1); }
  std::optional<Scalar> lower_distance(const SparseVec& p, const Scalar& tolerance) const override {
    return tiling_->union_lower_distance(p, stage_ - 1, tolerance);
  }

 private:
  const StageTiling* tiling_;
  unsigned stage_;
};

struct Node {
  Scalar bound;
  CellKey cell;
};

struct NodeAfter {
  bool operator()(const Node& a, const Node& b) const { return b.bound < a.bound; }
};

}  // namespace

struct StageTiling::Stage {
  unsigned n = 0;
  std::unique_ptr<CoverFamily> family;
};

StageTiling::StageTiling(SpaceSpec y_space, std::vector<SparseVec> generators, WhitneyParams params)
    : y_space_(std::move(y_space)), space_(y_space_.blocks(), true), generators_(std::move(generators)),
      params_(std::move(params)) {
  if (y_space_.has_tail()) throw DomainError("Y may not carry a tail");
  params_.validate();
  for (const auto& g : generators_) {
    y_space_.check_supported(g);
    if (g.is_zero()) throw DomainError("zero generator");
  }
}

StageTiling::~StageTiling() = default;

void StageTiling::build_stage(unsigned n) {
  while (built() < n) {
    const unsigned s = built() + 1;
    std::vector<SparseVec> basis;
    for (unsigned i = 0; i < s && i < generators_.size(); ++i) {
      auto trial = basis;
      trial.push_back(generators_[i]);
      try {
        SubspaceFrame probe(trial);
        basis = std::move(trial);
      } catch (const DegenerateFrameError&) {
      }
    }
    for (unsigned i = 1; i <= s; ++i) {
      SparseVec e;
      e.set_tail(TailIndex(i), 1);
      basis.push_back(std::move(e));
    }
    auto st = std::make_unique<Stage>();
    st->n = s;
    st->family = std::make_unique<CoverFamily>(space_, SubspaceFrame(std::move(basis), "Z" + std::to_string(s)),
                                               std::make_shared<PriorUnion>(this, s), params_);
    stages_.push_back(std::move(st));
  }
}

const StageTiling::Stage& StageTiling::stage(unsigned s) const {
  if (s == 0 || s > built()) throw NotYetBuiltError("stage " + std::to_string(s) + " has not been built");
  return *stages_[s - 1];
}

const CoverFamily& StageTiling::family(unsigned s) const { return *stage(s).family; }

SparseVec StageTiling::project(const SparseVec& p, unsigned s) {
  return p.restricted([](const std::string&) { return true; }, TailIndex(s));
}

StageBall StageTiling::member(unsigned s, const CellKey& cell) const {
  const auto& f = family(s);
  TailIndex k = cell_code(cell) + 1;
  Ball b = lift_ball(f.ball(cell), k, TailIndex(s));
  return StageBall{s, cell, std::move(k), std::move(b)};
}

std::optional<unsigned> StageTiling::stage_of(const SparseVec& p) const {
  space_.check_supported(p);
  for (unsigned n = 1; n <= built(); ++n)
    if (frame(n).contains(p)) return n;
  return std::nullopt;
}

std::vector<StageBall> StageTiling::locate_point(const SparseVec& p, bool all_stages) const {
  auto n = stage_of(p);
  if (!n) throw NotYetBuiltError("point lies outside every built stage");
  std::vector<StageBall> out;
  const unsigned last = all_stages ? built() : *n;
  for (unsigned s = 1; s <= last; ++s) {
    auto hits = stage_containing(s, p);
    out.insert(out.end(), hits.begin(), hits.end());
    if (!all_stages && !out.empty()) break;
  }
  return out;
}

std::vector<StageBall> StageTiling::stage_containing(unsigned s, const SparseVec& p) const {
  std::vector<StageBall> out;
  for (const auto& cell : family(s).balls_containing(project(p, s))) {
    auto m = member(s, cell);
    if (ball_contains(space_, m.ball, p)) out.push_back(std::move(m));
  }
  return out;
}

std::vector<StageBall> StageTiling::stage_near(unsigned s, const SparseVec& p, const Scalar& w) const {
  std::vector<StageBall> out;
  for (const auto& cell : family(s).balls_near(project(p, s), w)) {
    auto m = member(s, cell);
    if (dist_point_ball(space_, p, m.ball) <= w) out.push_back(std::move(m));
  }
  return out;
}

std::vector<StageBall> StageTiling::stage_near_horizon(unsigned s, const SparseVec& p, const Scalar& w,
                                                       unsigned max_level) const {
  std::vector<StageBall> out;
  for (const auto& cell : family(s).balls_near_horizon(project(p, s), w, max_level)) {
    auto m = member(s, cell);
    if (dist_point_ball(space_, p, m.ball) <= w) out.push_back(std::move(m));
  }
  return out;
}

bool StageTiling::union_contains(const SparseVec& p, unsigned s) const {
  for (unsigned t = 1; t <= s; ++t)
    if (!stage_containing(t, p).empty()) return true;
  return false;
}

std::optional<Scalar> StageTiling::union_lower_distance(const SparseVec& p, unsigned s, const Scalar& tolerance) const {
  if (s == 0) return std::nullopt;
  if (tolerance <= 0) throw DomainError("stage union distances need a positive tolerance");
  space_.check_supported(p);
  const TailIndex last_tail = p.tail().empty() ? TailIndex(0) : *p.tail().last_index();
  if (last_tail > TailIndex(static_cast<long>(s) + kMaxTailReach)) throw DomainError("point tail reaches too far");

  std::optional<Scalar> lower;  // certified bound for the stages processed so far
  std::optional<Scalar> upper;  // distance to some member found so far
  const Scalar share = tolerance / s;
  const Scalar prox = params_.proximity_factor();
  const Scalar select_reach = 2 * params_.window_hi + 1 + params_.kappa;

  for (unsigned t = 1; t <= s; ++t) {
    const CoverFamily& f = family(t);
    const SparseVec q = project(p, t);
    const auto runs = p.tail().tail_after(TailIndex(t)).runs();
    auto tail_bound = [&](const Scalar& r) {
      Scalar b = 0;
      for (const auto& run : runs) b = max(b, run.value < 0 ? Scalar(-run.value) : Scalar(run.value - 2 * r));
      return b;
    };
    auto offer = [&](const CellKey& cell) {
      const Scalar d = dist_point_ball(space_, p, member(t, cell).ball);
      if (!upper || d < *upper) upper = d;
    };
    // Members with a small lift index break the tail bound; treat them apart.
    if (last_tail > TailIndex(t)) {
      for (TailIndex c = 0; c < last_tail - t; ++c) {
        CellKey cell = cell_from_code(c, f.dim());
        if (f.selected(cell)) offer(cell);
      }
    }
    const Scalar r0 = f.circumradius(0);
    if (!upper) {
      Scalar w = 0;
      for (int step = 0; step < 64 && !upper; ++step, w = 2 * w + r0)
        for (const auto& cell : f.candidate_cells(q, w, 0))
          if (f.selected(cell)) offer(cell);
      if (!upper) throw DomainError("no member found near the query point");
    }

    auto bound_of = [&](const CellKey& cell) {
      const Scalar r = f.circumradius(cell.level);
      Scalar b = max(Scalar(distance(q, f.center(cell), space_) - 2 * r), tail_bound(r));
      if (cell.level >= 1 && lower) b = max(b, Scalar(*lower - prox * r));
      return b;
    };
    auto threshold = [&]() -> Scalar { return (lower ? min(*upper, *lower) : *upper) - share; };

    std::priority_queue<Node, std::vector<Node>, NodeAfter> queue;
    std::optional<Scalar> dropped;
    auto push = [&](CellKey cell) {
      Scalar b = bound_of(cell);
      if (b < threshold()) {
        queue.push(Node{std::move(b), std::move(cell)});
      } else if (!dropped || b < *dropped) {
        dropped = std::move(b);
      }
    };
    for (auto& cell : f.candidate_cells(q, *upper + r0, 0)) push(std::move(cell));
    while (!queue.empty() && queue.top().bound < threshold()) {
      Node node = queue.top();
      queue.pop();
      const CellInfo& ci = f.info(node.cell);
      if (ci.selected) offer(node.cell);
      if (!ci.lower) continue;
      const Scalar r = f.circumradius(node.cell.level);
      if (*ci.lower - r >= select_reach * r / 2) continue;
      for (auto& child : f.children(node.cell)) push(std::move(child));
    }
    Scalar next = *upper;
    if (lower) next = min(next, *lower);
    if (!queue.empty()) next = min(next, queue.top().bound);
    if (dropped) next = min(next, *dropped);
    lower = max(next, Scalar(0));
  }
  return lower;
}

std::size_t StageTiling::star_degree(const StageBall& b) const {
  auto near = stage_near(b.stage, b.ball.center, b.ball.radius);
  std::size_t n = 0;
  for (const auto& m : near)
    if (m.cell != b.cell) ++n;
  return n;
}

}  // namespace balltiling
