#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "balltiling/scalar.hpp"

namespace balltiling {

/// Coordinate `index` of the named finite block.
struct BlockCoord {
  std::string block;
  std::uint32_t index = 0;

  auto operator<=>(const BlockCoord&) const = default;
};

/// A coordinate id: either a block coordinate or a tail index.
struct CoordId {
  std::optional<BlockCoord> block;  // empty => tail coordinate
  TailIndex tail;

  static CoordId of_block(std::string name, std::uint32_t index) {
    return CoordId{BlockCoord{std::move(name), index}, TailIndex(0)};
  }
  static CoordId of_tail(TailIndex i) { return CoordId{std::nullopt, std::move(i)}; }

  bool is_tail() const { return !block.has_value(); }
};

/// Parses "b0.2" (block b0, index 2) or "t7" (tail index 7).
CoordId parse_coord(const std::string& text);
std::string to_string(const CoordId& c);

/// Finitely supported function from tail indices to scalars, stored as
/// runs of constant value so that long constant stretches cost O(1).
class TailFn {
 public:
  struct Run {
    TailIndex from;
    TailIndex through;
    Scalar value;
  };

  Scalar at(const TailIndex& i) const;
  void set(const TailIndex& i, const Scalar& v) { add_run(i, i, v - at(i)); }
  /// Adds `v` on every index of [from, through].
  void add_run(const TailIndex& from, const TailIndex& through, const Scalar& v);

  std::vector<Run> runs() const;
  bool empty() const { return steps_.empty(); }
  Scalar sup_abs() const;
  /// Largest index with a nonzero value.
  std::optional<TailIndex> last_index() const;
  std::optional<TailIndex> first_index() const;

  /// Keeps indices in [0, through]; everything after is dropped.
  TailFn truncated(const TailIndex& through) const;
  /// Keeps indices strictly greater than `after`.
  TailFn tail_after(const TailIndex& after) const;

  TailFn scaled(const Scalar& k) const;
  friend TailFn operator+(const TailFn& a, const TailFn& b);
  friend TailFn operator-(const TailFn& a, const TailFn& b);
  friend bool operator==(const TailFn& a, const TailFn& b) { return a.steps_ == b.steps_; }

  /// Visits maximal intervals where both functions are constant, including
  /// zero stretches between supports; the final open-ended zero run is skipped.
  void for_each_joint_run(const TailFn& other,
                          const std::function<void(const TailIndex& from, const TailIndex& through,
                                                   const Scalar& mine, const Scalar& theirs)>&
                              fn) const;

 private:
  static TailFn combine(const TailFn& a, const TailFn& b,
                        const std::function<Scalar(const Scalar&, const Scalar&)>& op);
  void canonicalize();

  // Value on [key, next key). Zero before the first key; last value is zero.
  std::map<TailIndex, Scalar> steps_;
};

/// Point of a block space with an optional c00 tail. Absent entries are 0.
class SparseVec {
 public:
  SparseVec() = default;

  Scalar get(const CoordId& c) const;
  void set(const CoordId& c, const Scalar& v);
  Scalar get_block(const std::string& block, std::uint32_t index) const;
  void set_block(const std::string& block, std::uint32_t index, const Scalar& v);
  Scalar get_tail(const TailIndex& i) const { return tail_.at(i); }
  void set_tail(const TailIndex& i, const Scalar& v) { tail_.set(i, v); }

  const std::map<BlockCoord, Scalar>& block_entries() const { return blocks_; }
  const TailFn& tail() const { return tail_; }
  TailFn& tail() { return tail_; }

  bool is_zero() const { return blocks_.empty() && tail_.empty(); }

  SparseVec& operator+=(const SparseVec& o);
  SparseVec& operator-=(const SparseVec& o);
  SparseVec& operator*=(const Scalar& k);
  /// this += k * v
  SparseVec& add_scaled(const Scalar& k, const SparseVec& v);
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(const Scalar& k, SparseVec v) { return v *= k; }
  friend SparseVec operator-(SparseVec v) { return v *= Scalar(-1); }
  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.blocks_ == b.blocks_ && a.tail_ == b.tail_;
  }

  /// Restriction to the given blocks; tail kept up to `tail_through`
  /// (std::nullopt keeps the whole tail, a negative bound drops it).
  SparseVec restricted(const std::function<bool(const std::string&)>& keep_block,
                       const std::optional<TailIndex>& tail_through) const;

 private:
  std::map<BlockCoord, Scalar> blocks_;
  TailFn tail_;
};

std::string to_string(const SparseVec& v);

}  // namespace balltiling
