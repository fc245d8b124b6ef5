#include "balltiling/space.hpp"

#include <algorithm>
#include <set>

namespace balltiling {

SpaceSpec::SpaceSpec(std::vector<Block> blocks, bool tail) : blocks_(std::move(blocks)), tail_(tail) {
  std::set<std::string> names;
  for (const auto& b : blocks_) {
    if (b.name.empty()) throw DomainError("block name must be non-empty");
    if (b.name.find('.') != std::string::npos) throw DomainError("block name may not contain '.'");
    if (b.dim == 0) throw DomainError("block '" + b.name + "' has dimension 0");
    if (!names.insert(b.name).second) throw DomainError("duplicate block name '" + b.name + "'");
  }
}

const Block* SpaceSpec::find(const std::string& name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return &b;
  return nullptr;
}

void SpaceSpec::check_supported(const SparseVec& v) const {
  for (const auto& [c, x] : v.block_entries()) {
    const Block* b = find(c.block);
    if (b == nullptr) throw DomainError("coordinate block '" + c.block + "' not in space");
    if (c.index >= b->dim) {
      throw DomainError("coordinate " + c.block + "." + std::to_string(c.index) + " out of range");
    }
  }
  if (!tail_ && !v.tail().empty()) throw DomainError("tail coordinate in a space without tail");
}

bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
  if (a.tail_ != b.tail_ || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    const auto& x = a.blocks_[i];
    const auto& y = b.blocks_[i];
    if (x.name != y.name || x.dim != y.dim || x.kind != y.kind) return false;
  }
  return true;
}

namespace {

// Per-block partial norms of the entries of v, combined by sup.
Scalar block_part(const SparseVec& v, const SpaceSpec& s) {
  Scalar best(0);
  const auto& entries = v.block_entries();
  auto it = entries.begin();
  while (it != entries.end()) {
    const std::string& name = it->first.block;
    const Block* b = s.find(name);
    if (b == nullptr) throw DomainError("coordinate block '" + name + "' not in space");
    Scalar acc(0);
    for (; it != entries.end() && it->first.block == name; ++it) {
      if (it->first.index >= b->dim) throw DomainError("coordinate out of range in block '" + name + "'");
      if (b->kind == NormKind::L1) {
        acc += abs(it->second);
      } else {
        acc = max(acc, abs(it->second));
      }
    }
    best = max(best, acc);
  }
  return best;
}

}  // namespace

Scalar norm(const SparseVec& v, const SpaceSpec& s) {
  if (!s.has_tail() && !v.tail().empty()) throw DomainError("tail coordinate in a space without tail");
  return max(block_part(v, s), v.tail().sup_abs());
}

Scalar distance(const SparseVec& a, const SparseVec& b, const SpaceSpec& s) {
  if (!s.has_tail() && (!a.tail().empty() || !b.tail().empty()))
    throw DomainError("tail coordinate in a space without tail");
  // Merge the two sorted block maps; entries of one block are contiguous.
  Scalar best(0);
  const auto& ea = a.block_entries();
  const auto& eb = b.block_entries();
  auto ia = ea.begin();
  auto ib = eb.begin();
  const std::string* current = nullptr;
  const Block* block = nullptr;
  Scalar acc(0);
  Scalar diff;
  while (ia != ea.end() || ib != eb.end()) {
    const BlockCoord* key;
    if (ib == eb.end() || (ia != ea.end() && ia->first < ib->first)) {
      key = &ia->first;
      diff = ia->second;
      ++ia;
    } else if (ia == ea.end() || ib->first < ia->first) {
      key = &ib->first;
      diff = -ib->second;
      ++ib;
    } else {
      key = &ia->first;
      diff = ia->second - ib->second;
      ++ia;
      ++ib;
    }
    if (current == nullptr || *current != key->block) {
      best = max(best, acc);
      acc = 0;
      current = &key->block;
      block = s.find(*current);
      if (block == nullptr) throw DomainError("coordinate block '" + *current + "' not in space");
    }
    if (key->index >= block->dim) throw DomainError("coordinate out of range in block '" + *current + "'");
    if (block->kind == NormKind::L1) {
      acc += abs(diff);
    } else {
      acc = max(acc, abs(diff));
    }
  }
  best = max(best, acc);
  a.tail().for_each_joint_run(b.tail(), [&](const TailIndex&, const TailIndex&, const Scalar& x,
                                            const Scalar& y) { best = max(best, abs(Scalar(x - y))); });
  return best;
}

Scalar dual_norm(const SparseVec& f, const SpaceSpec& s) {
  // Dual of a sup-combination is the sum of the duals; dual of l1 is
  // l-infinity and vice versa. Each tail coordinate is its own summand.
  Scalar total(0);
  const auto& entries = f.block_entries();
  auto it = entries.begin();
  while (it != entries.end()) {
    const std::string& name = it->first.block;
    const Block* b = s.find(name);
    if (b == nullptr) throw DomainError("coordinate block '" + name + "' not in space");
    Scalar acc(0);
    for (; it != entries.end() && it->first.block == name; ++it) {
      if (b->kind == NormKind::L1) {
        acc = max(acc, abs(it->second));
      } else {
        acc += abs(it->second);
      }
    }
    total += acc;
  }
  for (const auto& run : f.tail().runs()) {
    total += abs(run.value) * Scalar(mpz_class(run.through - run.from + 1));
  }
  return total;
}

bool SubSum::keeps_block(const std::string& name) const {
  return std::find(blocks.begin(), blocks.end(), name) != blocks.end();
}

bool SubSum::keeps_tail(const TailIndex& i) const {
  switch (tail) {
    case Tail::None:
      return false;
    case Tail::All:
      return true;
    case Tail::Prefix:
      return i <= tail_through;
  }
  return false;
}

SparseVec SubSum::kept(const SparseVec& v) const {
  std::optional<TailIndex> through;
  if (tail == Tail::None) through = TailIndex(-1);
  if (tail == Tail::Prefix) through = tail_through;
  return v.restricted([this](const std::string& n) { return keeps_block(n); }, through);
}

SparseVec SubSum::discarded(const SparseVec& v) const { return v - kept(v); }

}  // namespace balltiling
