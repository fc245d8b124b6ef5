#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "balltiling/space.hpp"

namespace balltiling {

class DegenerateFrameError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Rational basis of a finite-dimensional subspace. Linear independence is
/// checked exactly at construction.
class SubspaceFrame {
 public:
  explicit SubspaceFrame(std::vector<SparseVec> basis, std::string label = {});

  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const std::string& label() const { return label_; }

  SparseVec combine(std::span<const Scalar> coeffs) const;

  /// A fixed left inverse L of the basis matrix applied to `v`. For `v` in
  /// the span this is its coordinate vector.
  std::vector<Scalar> apply_left_inverse(const SparseVec& v) const;

  std::optional<std::vector<Scalar>> coords_of(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return coords_of(v).has_value(); }

  /// Rows of the left inverse as functionals; |(Lw)_i| <= dual_norm(row_i) ||w||.
  const std::vector<SparseVec>& left_inverse_rows() const { return rows_; }

 private:
  std::vector<SparseVec> basis_;
  std::string label_;
  std::vector<SparseVec> rows_;
};

}  // namespace balltiling
