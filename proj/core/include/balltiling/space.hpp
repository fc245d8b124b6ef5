#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balltiling/sparse_vec.hpp"

namespace balltiling {

enum class NormKind { L1, LInf };

struct Block {
  std::string name;
  std::uint32_t dim = 0;
  NormKind kind = NormKind::L1;
};

/// A finite sup-combination of l1 / l-infinity blocks, optionally followed
/// by an unbounded sup-norm c00 tail.
class SpaceSpec {
 public:
  SpaceSpec(std::vector<Block> blocks, bool tail);

  static SpaceSpec single(std::string name, std::uint32_t dim, NormKind kind) {
    return SpaceSpec({Block{std::move(name), dim, kind}}, false);
  }
  static SpaceSpec tail_only() { return SpaceSpec({}, true); }

  const std::vector<Block>& blocks() const { return blocks_; }
  bool has_tail() const { return tail_; }
  const Block* find(const std::string& name) const;

  /// Throws DomainError if `v` uses a coordinate outside the space.
  void check_supported(const SparseVec& v) const;

  friend bool operator==(const SpaceSpec& a, const SpaceSpec& b);

 private:
  std::vector<Block> blocks_;
  bool tail_;
};

/// Exact norm of `v` in `s`.
Scalar norm(const SparseVec& v, const SpaceSpec& s);

/// Exact ||a - b|| without materializing the difference of long tail runs.
Scalar distance(const SparseVec& a, const SparseVec& b, const SpaceSpec& s);

/// Dual norm of the linear functional with the given coefficients.
Scalar dual_norm(const SparseVec& functional, const SpaceSpec& s);

/// Keeps a sub-sum of a sup-combined space: some blocks and a prefix of the
/// tail.
struct SubSum {
  std::vector<std::string> blocks;
  enum class Tail { None, All, Prefix } tail = Tail::None;
  TailIndex tail_through;  // last kept tail index when tail == Prefix

  static SubSum blocks_only(std::vector<std::string> names) { return SubSum{std::move(names), Tail::None, 0}; }
  static SubSum with_tail_prefix(std::vector<std::string> names, TailIndex through) {
    return SubSum{std::move(names), Tail::Prefix, std::move(through)};
  }

  bool keeps_block(const std::string& name) const;
  bool keeps_tail(const TailIndex& i) const;
  SparseVec kept(const SparseVec& v) const;
  SparseVec discarded(const SparseVec& v) const;
};

}  // namespace balltiling
