#include "balltiling/frame.hpp"

#include <set>
#include <utility>

namespace balltiling {

namespace {

constexpr long kMaxExpandedRun = 64;

std::vector<CoordId> coordinates_of(const std::vector<SparseVec>& basis) {
  std::vector<CoordId> out;
  std::set<BlockCoord> seen_blocks;
  std::set<TailIndex> seen_tail;
  for (const auto& v : basis) {
    for (const auto& [c, x] : v.block_entries())
      if (seen_blocks.insert(c).second) out.push_back(CoordId::of_block(c.block, c.index));
    for (const auto& run : v.tail().runs()) {
      if (run.through - run.from >= kMaxExpandedRun)
        throw DomainError("frame vectors may not use long tail runs");
      for (TailIndex i = run.from; i <= run.through; ++i)
        if (seen_tail.insert(i).second) out.push_back(CoordId::of_tail(i));
    }
  }
  return out;
}

}  // namespace

SubspaceFrame::SubspaceFrame(std::vector<SparseVec> basis, std::string label)
    : basis_(std::move(basis)), label_(std::move(label)) {
  if (basis_.empty()) throw DegenerateFrameError("frame '" + label_ + "' has no basis vectors");
  const std::size_t d = basis_.size();
  const std::vector<CoordId> coords = coordinates_of(basis_);
  const std::size_t m = coords.size();
  if (m < d) throw DegenerateFrameError("frame '" + label_ + "' is linearly dependent");

  // Row-reduce the d x m matrix whose rows are the basis vectors to find d
  // pivot coordinates.
  std::vector<std::vector<Scalar>> a(d, std::vector<Scalar>(m));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i][j] = basis_[i].get(coords[j]);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < d; ++col) {
    std::size_t p = row;
    while (p < d && a[p][col] == 0) ++p;
    if (p == d) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = row + 1; i < d; ++i) {
      if (a[i][col] == 0) continue;
      Scalar f = a[i][col] / a[row][col];
      for (std::size_t j = col; j < m; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  if (pivots.size() != d) throw DegenerateFrameError("frame '" + label_ + "' is linearly dependent");

  // Invert the square submatrix M_P (rows = pivot coordinates, cols = basis).
  std::vector<std::vector<Scalar>> mp(d, std::vector<Scalar>(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) mp[i][k] = basis_[k].get(coords[pivots[i]]);
    mp[i][d + i] = 1;
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t p = col;
    while (p < d && mp[p][col] == 0) ++p;
    std::swap(mp[p], mp[col]);
    Scalar inv = 1 / mp[col][col];
    for (auto& x : mp[col]) x *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || mp[i][col] == 0) continue;
      Scalar f = mp[i][col];
      for (std::size_t j = 0; j < 2 * d; ++j) mp[i][j] -= f * mp[col][j];
    }
  }
  // (M_P)^{-1} maps values at pivot coordinates to frame coefficients.
  rows_.assign(d, SparseVec{});
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) rows_[k].set(coords[pivots[i]], mp[k][d + i]);
}

SparseVec SubspaceFrame::combine(std::span<const Scalar> coeffs) const {
  if (coeffs.size() != basis_.size()) throw DomainError("coefficient count does not match frame dimension");
  SparseVec out;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out.add_scaled(coeffs[i], basis_[i]);
  return out;
}

std::vector<Scalar> SubspaceFrame::apply_left_inverse(const SparseVec& v) const {
  std::vector<Scalar> out(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Scalar acc(0);
    for (const auto& [c, x] : rows_[k].block_entries()) acc += x * v.get_block(c.block, c.index);
    for (const auto& run : rows_[k].tail().runs())
      for (TailIndex i = run.from; i <= run.through; ++i) acc += run.value * v.get_tail(i);
    out[k] = acc;
  }
  return out;
}

std::optional<std::vector<Scalar>> SubspaceFrame::coords_of(const SparseVec& v) const {
  auto a = apply_left_inverse(v);
  if (combine(a) == v) return a;
  return std::nullopt;
}

}  // namespace balltiling
