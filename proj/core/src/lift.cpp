#include "balltiling/lift.hpp"

namespace balltiling {

namespace {

mpz_class zigzag(std::int64_t x) { return x >= 0 ? mpz_class(mpz_class(2) * x) : mpz_class(mpz_class(-2) * x - 1); }

std::int64_t unzigzag(const mpz_class& z) {
  mpz_class v = (z % 2 == 0) ? mpz_class(z / 2) : mpz_class(-(z + 1) / 2);
  if (!v.fits_slong_p()) throw DomainError("cell code out of range");
  return v.get_si();
}

mpz_class pair(const mpz_class& a, const mpz_class& b) {
  mpz_class s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<mpz_class, mpz_class> unpair(const mpz_class& z) {
  mpz_class root = sqrt(mpz_class(8 * z + 1));
  mpz_class w = (root - 1) / 2;
  mpz_class b = z - w * (w + 1) / 2;
  return {w - b, b};
}

mpz_class ceil_of(const Scalar& s) { return -floor(Scalar(-s)); }

SparseVec block_part(const SparseVec& p) { return p.restricted([](const std::string&) { return true; }, TailIndex(-1)); }

}  // namespace

Ball lift_ball(const Ball& base, const TailIndex& k, const TailIndex& offset) {
  if (k < 1) throw DomainError("lift index must be at least 1");
  if (offset < 0) throw DomainError("negative tail offset");
  if (!base.center.tail().empty() && *base.center.tail().last_index() > offset)
    throw DomainError("base ball uses tail coordinates past the offset");
  SparseVec c = base.center;
  if (k > 1) c.tail().add_run(offset + 1, offset + k - 1, base.radius);
  c.tail().add_run(offset + k, offset + k, -base.radius);
  return Ball(std::move(c), base.radius);
}

std::vector<Ball> lift_ball_family(const std::vector<Ball>& family, const TailIndex& offset) {
  std::vector<Ball> out;
  out.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) out.push_back(lift_ball(family[i], TailIndex(static_cast<unsigned long>(i + 1)), offset));
  return out;
}

TailIndex cell_code(const CellKey& cell) {
  if (cell.corner.empty()) throw DomainError("cell without coordinates");
  mpz_class acc = zigzag(cell.corner.back());
  for (std::size_t i = cell.corner.size() - 1; i-- > 0;) acc = pair(zigzag(cell.corner[i]), acc);
  return pair(mpz_class(cell.level), acc);
}

CellKey cell_from_code(const TailIndex& code, std::size_t dim) {
  if (code < 0 || dim == 0) throw DomainError("invalid cell code");
  auto [level, rest] = unpair(code);
  if (!level.fits_uint_p()) throw DomainError("cell code out of range");
  CellKey out{static_cast<unsigned>(level.get_ui()), {}};
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    auto [a, b] = unpair(rest);
    out.corner.push_back(unzigzag(a));
    rest = b;
  }
  out.corner.push_back(unzigzag(rest));
  return out;
}

mpz_class round_to_even(const Scalar& t) {
  const Scalar half = t / 2;
  const mpz_class f = floor(half);
  return (half - Scalar(f) <= Scalar(1, 2)) ? mpz_class(2 * f) : mpz_class(2 * f + 2);
}

SparseVec sphere_decomposition_center(const SparseVec& p) {
  if (!p.block_entries().empty()) throw DomainError("sphere decomposition expects a pure tail vector");
  SparseVec c;
  Scalar worst = 0;
  for (const auto& run : p.tail().runs()) {
    const Scalar odd(2 * ceil_of(run.value / 2) - 1);
    worst = max(worst, abs(run.value - odd));
    c.tail().add_run(run.from, run.through, odd);
  }
  if (worst < 1) {
    auto last = p.tail().last_index();
    const TailIndex fresh = last ? TailIndex(*last + 1) : TailIndex(1);
    c.set_tail(fresh, 1);
  }
  return c;
}

IntervalTiling::IntervalTiling(std::string block, Scalar origin, Scalar half_width)
    : space_(SpaceSpec::single(block, 1, NormKind::LInf)), block_(std::move(block)), origin_(std::move(origin)),
      half_(std::move(half_width)) {
  if (half_ <= 0) throw DomainError("interval tiling needs a positive half width");
}

Ball IntervalTiling::member(const mpz_class& k) const {
  SparseVec c;
  c.set_block(block_, 0, origin_ + 2 * half_ * Scalar(k));
  return Ball(std::move(c), half_);
}

std::vector<Ball> IntervalTiling::locate(const SparseVec& x) const {
  space_.check_supported(x);
  const Scalar v = x.get_block(block_, 0);
  const mpz_class k = floor((v - origin_ + half_) / (2 * half_));
  std::vector<Ball> out;
  const Ball b = member(k);
  if (v - b.center.get_block(block_, 0) == -half_) out.push_back(member(k - 1));
  out.push_back(b);
  return out;
}

ListTiling::ListTiling(SpaceSpec space, std::vector<Ball> balls) : space_(std::move(space)), balls_(std::move(balls)) {
  if (space_.has_tail()) throw DomainError("base tiling space may not carry a tail");
  for (const auto& b : balls_) {
    if (b.degenerate()) throw DomainError("base tiling contains a degenerate ball");
    space_.check_supported(b.center);
  }
}

std::vector<Ball> ListTiling::locate(const SparseVec& x) const {
  std::vector<Ball> out;
  for (const auto& b : balls_)
    if (ball_contains(space_, b, x)) out.push_back(b);
  return out;
}

LiftedTiling::LiftedTiling(std::shared_ptr<const BaseTiling> base)
    : base_(std::move(base)), space_(base_->space().blocks(), true) {
  if (base_->space().has_tail()) throw DomainError("base tiling space may not carry a tail");
}

std::vector<Ball> LiftedTiling::locate_all(const SparseVec& p) const {
  space_.check_supported(p);
  std::vector<Ball> out;
  for (const auto& b : base_->locate(block_part(p))) {
    if (b.degenerate()) throw DomainError("base tiling contains a degenerate ball");
    SparseVec c = b.center;
    for (const auto& run : p.tail().runs()) {
      const mpz_class e = round_to_even(run.value / b.radius);
      if (e != 0) c.tail().add_run(run.from, run.through, b.radius * Scalar(e));
    }
    out.emplace_back(std::move(c), b.radius);
  }
  return out;
}

Ball LiftedTiling::locate(const SparseVec& p) const {
  auto all = locate_all(p);
  if (all.empty()) throw DomainError("point is not covered by the base tiling");
  return all.front();
}

}  // namespace balltiling
