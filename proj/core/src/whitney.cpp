#include "balltiling/whitney.hpp"

#include <algorithm>
#include <sstream>

namespace balltiling {

namespace {

constexpr unsigned kMaxLevel = 4096;
constexpr std::uint64_t kMaxCandidates = 5'000'000;
constexpr int kRefineSteps = 64;

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw DomainError("cell index out of range");
  return z.get_si();
}

mpz_class ceil_of(const Scalar& s) { return -floor(Scalar(-s)); }

}  // namespace

void WhitneyParams::validate() const {
  if (base_side <= 0 || window_lo <= 0 || kappa <= 0) throw DomainError("Whitney constants must be positive");
  if (window_hi < 2 * window_lo + 1 + kappa) throw DomainError("Whitney window too narrow: need hi >= 2 lo + 1 + kappa");
}

std::size_t CellKeyHash::operator()(const CellKey& k) const noexcept {
  std::size_t h = std::hash<unsigned>{}(k.level);
  for (auto c : k.corner) h = h * 1000003u ^ std::hash<std::int64_t>{}(c);
  return h;
}

std::string to_string(const CellKey& k) {
  std::ostringstream os;
  os << "L" << k.level << "[";
  for (std::size_t i = 0; i < k.corner.size(); ++i) os << (i ? "," : "") << k.corner[i];
  os << "]";
  return os.str();
}

CoverFamily::CoverFamily(SpaceSpec ambient, SubspaceFrame frame, std::shared_ptr<const Obstacle> obstacle,
                         WhitneyParams params)
    : ambient_(std::move(ambient)), frame_(std::move(frame)), obstacle_(std::move(obstacle)), params_(std::move(params)) {
  params_.validate();
  if (!obstacle_) obstacle_ = std::make_shared<EmptyObstacle>();
  for (const auto& b : frame_.basis()) ambient_.check_supported(b);
  const std::size_t d = frame_.dim();
  if (d > 20) throw DomainError("frame dimension too large");
  // Circumradius of the unit cell: max over sign patterns; the first sign is
  // fixed by symmetry.
  unit_circumradius_ = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (d - 1)); ++mask) {
    std::vector<Scalar> c(d, Scalar(1, 2));
    for (std::size_t i = 1; i < d; ++i)
      if (mask >> (i - 1) & 1U) c[i] = Scalar(-1, 2);
    unit_circumradius_ = max(unit_circumradius_, norm(frame_.combine(c), ambient_));
  }
  for (const auto& row : frame_.left_inverse_rows()) row_dual_.push_back(dual_norm(row, ambient_));
}

Scalar CoverFamily::side(unsigned level) const { return params_.base_side * dyadic(level); }

Scalar CoverFamily::circumradius(unsigned level) const { return unit_circumradius_ * side(level); }

const SparseVec& CoverFamily::center(const CellKey& cell) const {
  if (auto it = centers_.find(cell); it != centers_.end()) return it->second;
  if (cell.corner.size() != dim()) throw DomainError("cell corner has wrong dimension");
  const Scalar s = side(cell.level);
  std::vector<Scalar> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = (Scalar(cell.corner[i]) + Scalar(1, 2)) * s;
  return centers_.emplace(cell, frame_.combine(c)).first->second;
}

std::vector<SparseVec> CoverFamily::vertices(const CellKey& cell) const {
  const std::size_t d = dim();
  const Scalar s = side(cell.level);
  std::vector<SparseVec> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    std::vector<Scalar> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = Scalar(cell.corner[i] + static_cast<std::int64_t>(mask >> i & 1U)) * s;
    out.push_back(frame_.combine(c));
  }
  return out;
}

std::vector<CellKey> CoverFamily::children(const CellKey& cell) const {
  const std::size_t d = dim();
  std::vector<CellKey> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    CellKey c{cell.level + 1, cell.corner};
    for (std::size_t i = 0; i < d; ++i) c.corner[i] = 2 * c.corner[i] + static_cast<std::int64_t>(mask >> i & 1U);
    out.push_back(std::move(c));
  }
  return out;
}

CellKey CoverFamily::parent(const CellKey& cell) const {
  if (cell.level == 0) throw DomainError("level-0 cells have no parent");
  CellKey p{cell.level - 1, cell.corner};
  for (auto& c : p.corner) c = (c >= 0) ? c / 2 : -((-c + 1) / 2);
  return p;
}

const CellInfo& CoverFamily::info(const CellKey& cell) const {
  if (auto it = cache_.find(cell); it != cache_.end()) return it->second;
  CellInfo ci;
  const Scalar r = circumradius(cell.level);
  ci.lower = obstacle_->lower_distance(center(cell), params_.kappa * r);
  if (!ci.lower) {
    ci.selected = cell.level == 0;
  } else {
    const Scalar delta = *ci.lower - r;
    const Scalar diam = 2 * r;
    ci.selected = delta >= params_.window_lo * diam && (cell.level == 0 || delta < params_.window_hi * diam);
  }
  return cache_.emplace(cell, std::move(ci)).first->second;
}

std::vector<CellKey> CoverFamily::candidate_cells(const SparseVec& q, const Scalar& w, unsigned level) const {
  const std::size_t d = dim();
  const auto a = frame_.apply_left_inverse(q);
  const Scalar s = side(level);
  const Scalar reach = circumradius(level) + w;
  std::vector<std::int64_t> lo(d), hi(d);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    const Scalar span = row_dual_[i] * reach;
    lo[i] = to_i64(ceil_of((a[i] - span) / s - Scalar(1, 2)));
    hi[i] = to_i64(floor((a[i] + span) / s - Scalar(1, 2)));
    if (hi[i] < lo[i]) return {};
    total *= static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
    if (total > kMaxCandidates) throw DomainError("query region too large for level " + std::to_string(level));
  }
  std::vector<CellKey> out;
  out.reserve(total);
  CellKey k{level, lo};
  while (true) {
    out.push_back(k);
    std::size_t i = 0;
    while (i < d && k.corner[i] == hi[i]) k.corner[i] = lo[i], ++i;
    if (i == d) break;
    ++k.corner[i];
  }
  return out;
}

CoverFamily::LevelWindow CoverFamily::window_for(const Scalar& lower, const Scalar& tolerance, const Scalar& w,
                                                 bool bounded_below) const {
  LevelWindow win;
  const Scalar upper_r = (lower + tolerance + w) / (2 * params_.window_lo);
  win.level0 = circumradius(0) <= upper_r;
  unsigned j = 1;
  while (circumradius(j) > upper_r) {
    if (++j > kMaxLevel) throw DomainError("level window exceeds the supported depth");
  }
  win.first = j;
  if (bounded_below) {
    const Scalar lower_r = (lower - w) / params_.proximity_factor();
    unsigned last = 0;
    while (circumradius(last + 1) > lower_r) {
      if (++last > kMaxLevel) throw DomainError("level window exceeds the supported depth");
    }
    win.last = last;
  }
  return win;
}

std::vector<CellKey> CoverFamily::scan(const SparseVec& q, const Scalar& w, const LevelWindow& win) const {
  std::vector<CellKey> out;
  auto visit = [&](unsigned level) {
    const Scalar reach = circumradius(level) + w;
    for (auto& cell : candidate_cells(q, w, level))
      if (distance(q, center(cell), ambient_) <= reach && selected(cell)) out.push_back(std::move(cell));
  };
  if (win.level0) visit(0);
  if (!win.last) throw DomainError("unbounded level window");
  for (unsigned j = win.first; j <= *win.last; ++j) visit(j);
  return out;
}

std::vector<CellKey> CoverFamily::locate(const SparseVec& q) const {
  ambient_.check_supported(q);
  if (!frame_.contains(q)) throw DomainError("point is not in the subspace " + frame_.label());
  if (obstacle_->contains(q)) throw ObstaclePointError("point lies in the obstacle");
  return balls_containing(q);
}

std::vector<CellKey> CoverFamily::balls_containing(const SparseVec& q) const {
  ambient_.check_supported(q);
  if (obstacle_->empty()) return scan(q, 0, LevelWindow{true, 1, 0});
  if (obstacle_->contains(q)) return {};
  Scalar tol = circumradius(0);
  for (int step = 0; step < kRefineSteps; ++step) {
    auto lower = obstacle_->lower_distance(q, tol);
    if (*lower > 0 && tol <= *lower) return scan(q, 0, window_for(*lower, tol, 0, true));
    tol = *lower > 0 ? Scalar(min(Scalar(tol / 4), *lower)) : Scalar(tol / 4);
  }
  throw DomainError("could not separate the point from the obstacle");
}

std::vector<CellKey> CoverFamily::balls_near(const SparseVec& q, const Scalar& w) const {
  ambient_.check_supported(q);
  if (w < 0) throw DomainError("negative query radius");
  if (obstacle_->empty()) return scan(q, w, LevelWindow{true, 1, 0});
  Scalar tol = max(w, circumradius(0));
  for (int step = 0; step < kRefineSteps; ++step, tol /= 4) {
    auto lower = obstacle_->lower_distance(q, tol);
    if (*lower > w) return scan(q, w, window_for(*lower, tol, w, true));
    if (*lower + tol <= w) break;
  }
  throw TouchesObstacleError("query ball reaches the obstacle");
}

std::vector<CellKey> CoverFamily::balls_near_horizon(const SparseVec& q, const Scalar& w, unsigned max_level) const {
  ambient_.check_supported(q);
  if (obstacle_->empty()) return scan(q, w, LevelWindow{true, 1, 0});
  const Scalar tol = max(w, circumradius(max_level));
  auto lower = obstacle_->lower_distance(q, tol);
  Scalar l = max(*lower, Scalar(0));
  LevelWindow win = window_for(l, tol, w, l > w);
  win.last = win.last ? std::min(*win.last, max_level) : max_level;
  return scan(q, w, win);
}

std::uint64_t CoverFamily::star_degree_bound() const {
  const Scalar ratio = params_.proximity_factor() / (2 * params_.window_lo);
  int reach = 0;
  while (Scalar(mpz_class(1) << (reach + 1)) < ratio) ++reach;
  std::uint64_t total = 0;
  for (int delta = -reach; delta <= reach; ++delta) {
    const Scalar scale = delta >= 0 ? Scalar(mpz_class(1) << delta) : Scalar(1) / Scalar(mpz_class(1) << -delta);
    std::uint64_t prod = 1;
    for (const auto& kd : row_dual_) {
      mpz_class n = floor(2 * kd * unit_circumradius_ * (scale + 1)) + 1;
      prod *= n.get_ui();
    }
    total += prod;
  }
  return total - 1;
}

CellCertificate CoverFamily::certify(const CellKey& cell) const {
  CellCertificate cert;
  const Ball b = ball(cell);
  cert.covers_cell = true;
  for (const auto& v : vertices(cell))
    if (!ball_contains(ambient_, b, v)) cert.covers_cell = false;
  if (obstacle_->empty()) {
    cert.clear_of_obstacle = true;
  } else if (auto* finite = dynamic_cast<const BallListObstacle*>(obstacle_.get())) {
    cert.clear_of_obstacle = finite->distance(b.center) > b.radius;
  } else {
    const auto& ci = info(cell);
    cert.clear_of_obstacle = ci.lower && *ci.lower > b.radius;
  }
  return cert;
}

std::vector<CellKey> CoverFamily::materialized() const {
  std::vector<CellKey> out;
  for (const auto& [k, ci] : cache_)
    if (ci.selected) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace balltiling
