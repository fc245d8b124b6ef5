#include "balltiling/sparse_vec.hpp"

#include <algorithm>
#include <sstream>

namespace balltiling {

CoordId parse_coord(const std::string& text) {
  if (text.empty()) throw DomainError("empty coordinate id");
  if (auto dot = text.rfind('.'); dot != std::string::npos) {
    std::string name = text.substr(0, dot);
    std::string idx = text.substr(dot + 1);
    if (name.empty()) throw DomainError("bad coordinate id '" + text + "'");
    TailIndex i = parse_index(idx);
    if (!i.fits_uint_p()) throw DomainError("block index too large in '" + text + "'");
    return CoordId::of_block(std::move(name), static_cast<std::uint32_t>(i.get_ui()));
  }
  if (text[0] != 't') throw DomainError("bad coordinate id '" + text + "'");
  return CoordId::of_tail(parse_index(text.substr(1)));
}

std::string to_string(const CoordId& c) {
  if (c.is_tail()) return "t" + to_string(c.tail);
  return c.block->block + "." + std::to_string(c.block->index);
}

// ---------------------------------------------------------------------------
// TailFn

Scalar TailFn::at(const TailIndex& i) const {
  auto it = steps_.upper_bound(i);
  if (it == steps_.begin()) return Scalar(0);
  return std::prev(it)->second;
}

void TailFn::canonicalize() {
  Scalar prev(0);
  for (auto it = steps_.begin(); it != steps_.end();) {
    if (it->second == prev) {
      it = steps_.erase(it);
    } else {
      prev = it->second;
      ++it;
    }
  }
}

void TailFn::add_run(const TailIndex& from, const TailIndex& through, const Scalar& v) {
  if (from < 0) throw DomainError("negative tail index");
  if (through < from || v == 0) return;
  TailIndex after = through + 1;
  Scalar at_from = at(from);
  Scalar at_after = at(after);
  steps_[after] = at_after;
  steps_[from] = at_from;
  for (auto it = steps_.find(from); it != steps_.end() && it->first <= through; ++it) it->second += v;
  canonicalize();
}

std::vector<TailFn::Run> TailFn::runs() const {
  std::vector<Run> out;
  for (auto it = steps_.begin(); it != steps_.end(); ++it) {
    if (it->second == 0) continue;
    auto next = std::next(it);
    // canonical form guarantees a terminating zero step
    out.push_back(Run{it->first, TailIndex(next->first - 1), it->second});
  }
  return out;
}

Scalar TailFn::sup_abs() const {
  Scalar best(0);
  for (const auto& [k, v] : steps_) best = max(best, abs(v));
  return best;
}

std::optional<TailIndex> TailFn::last_index() const {
  if (steps_.empty()) return std::nullopt;
  return TailIndex(steps_.rbegin()->first - 1);
}

std::optional<TailIndex> TailFn::first_index() const {
  if (steps_.empty()) return std::nullopt;
  return steps_.begin()->first;
}

TailFn TailFn::truncated(const TailIndex& through) const {
  TailFn out;
  if (through < 0) return out;
  for (const auto& [k, v] : steps_) {
    if (k > through) break;
    out.steps_[k] = v;
  }
  out.steps_[through + 1] = Scalar(0);
  out.canonicalize();
  return out;
}

TailFn TailFn::tail_after(const TailIndex& after) const {
  TailFn out;
  TailIndex start = after + 1;
  if (start < 0) start = 0;
  out.steps_[start] = at(start);
  for (auto it = steps_.upper_bound(start); it != steps_.end(); ++it) out.steps_[it->first] = it->second;
  out.canonicalize();
  return out;
}

TailFn TailFn::scaled(const Scalar& k) const {
  TailFn out;
  if (k == 0) return out;
  out.steps_ = steps_;
  for (auto& [i, v] : out.steps_) v *= k;
  return out;
}

TailFn TailFn::combine(const TailFn& a, const TailFn& b,
                       const std::function<Scalar(const Scalar&, const Scalar&)>& op) {
  TailFn out;
  auto ia = a.steps_.begin();
  auto ib = b.steps_.begin();
  Scalar va(0), vb(0);
  while (ia != a.steps_.end() || ib != b.steps_.end()) {
    const TailIndex* key;
    if (ib == b.steps_.end() || (ia != a.steps_.end() && ia->first < ib->first)) {
      key = &ia->first;
    } else {
      key = &ib->first;
    }
    TailIndex k = *key;
    if (ia != a.steps_.end() && ia->first == k) va = (ia++)->second;
    if (ib != b.steps_.end() && ib->first == k) vb = (ib++)->second;
    out.steps_.emplace_hint(out.steps_.end(), k, op(va, vb));
  }
  out.canonicalize();
  return out;
}

TailFn operator+(const TailFn& a, const TailFn& b) {
  return TailFn::combine(a, b, [](const Scalar& x, const Scalar& y) { return Scalar(x + y); });
}

TailFn operator-(const TailFn& a, const TailFn& b) {
  return TailFn::combine(a, b, [](const Scalar& x, const Scalar& y) { return Scalar(x - y); });
}

void TailFn::for_each_joint_run(
    const TailFn& other,
    const std::function<void(const TailIndex&, const TailIndex&, const Scalar&, const Scalar&)>& fn)
    const {
  static const Scalar zero(0);
  auto ia = steps_.begin(), ib = other.steps_.begin();
  const auto ea = steps_.end(), eb = other.steps_.end();
  if (ia == ea && ib == eb) return;
  const Scalar* va = &zero;
  const Scalar* vb = &zero;
  auto next_key = [&]() -> const TailIndex* {
    if (ia == ea) return ib == eb ? nullptr : &ib->first;
    if (ib == eb) return &ia->first;
    return ia->first < ib->first ? &ia->first : &ib->first;
  };
  TailIndex key = *next_key();
  if (key > 0) fn(TailIndex(0), TailIndex(key - 1), zero, zero);
  while (true) {
    if (ia != ea && ia->first == key) va = &(ia++)->second;
    if (ib != eb && ib->first == key) vb = &(ib++)->second;
    const TailIndex* nk = next_key();
    if (!nk) break;
    fn(key, TailIndex(*nk - 1), *va, *vb);
    key = *nk;
  }
}

// ---------------------------------------------------------------------------
// SparseVec

Scalar SparseVec::get(const CoordId& c) const {
  if (c.is_tail()) return tail_.at(c.tail);
  return get_block(c.block->block, c.block->index);
}

void SparseVec::set(const CoordId& c, const Scalar& v) {
  if (c.is_tail()) {
    tail_.set(c.tail, v);
  } else {
    set_block(c.block->block, c.block->index, v);
  }
}

Scalar SparseVec::get_block(const std::string& block, std::uint32_t index) const {
  auto it = blocks_.find(BlockCoord{block, index});
  return it == blocks_.end() ? Scalar(0) : it->second;
}

void SparseVec::set_block(const std::string& block, std::uint32_t index, const Scalar& v) {
  BlockCoord key{block, index};
  if (v == 0) {
    blocks_.erase(key);
  } else {
    blocks_[key] = v;
  }
}

SparseVec& SparseVec::operator+=(const SparseVec& o) {
  for (const auto& [k, v] : o.blocks_) {
    Scalar sum = get_block(k.block, k.index) + v;
    set_block(k.block, k.index, sum);
  }
  if (!o.tail_.empty()) tail_ = tail_ + o.tail_;
  return *this;
}

SparseVec& SparseVec::operator-=(const SparseVec& o) {
  for (const auto& [k, v] : o.blocks_) {
    Scalar diff = get_block(k.block, k.index) - v;
    set_block(k.block, k.index, diff);
  }
  if (!o.tail_.empty()) tail_ = tail_ - o.tail_;
  return *this;
}

SparseVec& SparseVec::add_scaled(const Scalar& k, const SparseVec& v) {
  if (k == 0) return *this;
  for (const auto& [c, x] : v.blocks_) {
    auto [it, fresh] = blocks_.try_emplace(c, k * x);
    if (!fresh) {
      it->second += k * x;
      if (it->second == 0) blocks_.erase(it);
    }
  }
  for (const auto& run : v.tail_.runs()) tail_.add_run(run.from, run.through, k * run.value);
  return *this;
}

SparseVec& SparseVec::operator*=(const Scalar& k) {
  if (k == 0) {
    blocks_.clear();
    tail_ = TailFn{};
    return *this;
  }
  for (auto& [c, v] : blocks_) v *= k;
  tail_ = tail_.scaled(k);
  return *this;
}

SparseVec SparseVec::restricted(const std::function<bool(const std::string&)>& keep_block,
                                const std::optional<TailIndex>& tail_through) const {
  SparseVec out;
  for (const auto& [k, v] : blocks_)
    if (keep_block(k.block)) out.blocks_.emplace(k, v);
  out.tail_ = tail_through ? tail_.truncated(*tail_through) : tail_;
  return out;
}

std::string to_string(const SparseVec& v) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, x] : v.block_entries()) {
    if (!first) os << ", ";
    first = false;
    os << k.block << '.' << k.index << ": " << to_string(x);
  }
  for (const auto& run : v.tail().runs()) {
    if (!first) os << ", ";
    first = false;
    os << 't' << to_string(run.from);
    if (run.through != run.from) os << "..t" << to_string(run.through);
    os << ": " << to_string(run.value);
  }
  os << '}';
  return os.str();
}

}  // namespace balltiling
