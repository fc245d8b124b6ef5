#pragma once

// Reference computations that only read coordinates of library values.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "balltiling/ball.hpp"

namespace oracle {

using balltiling::Ball;
using balltiling::NormKind;
using balltiling::Scalar;
using balltiling::SpaceSpec;
using balltiling::SparseVec;
using balltiling::TailIndex;

/// sup_i |a_i - b_i| over the tail, by a sweep over run boundaries.
inline Scalar tail_sup_diff(const SparseVec& a, const SparseVec& b) {
  auto ra = a.tail().runs(), rb = b.tail().runs();
  auto by_start = [](const auto& x, const auto& y) { return x.from < y.from; };
  std::sort(ra.begin(), ra.end(), by_start);
  std::sort(rb.begin(), rb.end(), by_start);
  std::vector<TailIndex> cuts;
  for (const auto* rs : {&ra, &rb})
    for (const auto& r : *rs) {
      cuts.push_back(r.from);
      cuts.push_back(r.through + 1);
    }
  std::sort(cuts.begin(), cuts.end());
  std::size_t ia = 0, ib = 0;
  Scalar best = 0, d;
  for (const auto& i : cuts) {
    while (ia < ra.size() && ra[ia].through < i) ++ia;
    while (ib < rb.size() && rb[ib].through < i) ++ib;
    const bool ha = ia < ra.size() && ra[ia].from <= i, hb = ib < rb.size() && rb[ib].from <= i;
    if (ha && hb)
      d = ra[ia].value - rb[ib].value;
    else if (ha)
      d = ra[ia].value;
    else if (hb)
      d = rb[ib].value;
    else
      continue;
    if (d < 0) d = -d;
    if (best < d) best = d;
  }
  return best;
}

inline Scalar dist(const SpaceSpec& s, const SparseVec& a, const SparseVec& b) {
  Scalar best = tail_sup_diff(a, b);
  for (const auto& blk : s.blocks()) {
    Scalar acc = 0, d;
    for (std::uint32_t i = 0; i < blk.dim; ++i) {
      d = a.get_block(blk.name, i) - b.get_block(blk.name, i);
      if (d < 0) d = -d;
      if (blk.kind == NormKind::L1)
        acc += d;
      else if (acc < d)
        acc = d;
    }
    if (best < acc) best = acc;
  }
  return best;
}

inline bool contains(const SpaceSpec& s, const Ball& b, const SparseVec& p) { return dist(s, b.center, p) <= b.radius; }

inline bool overlap(const SpaceSpec& s, const Ball& a, const Ball& b) {
  return a.radius > 0 && b.radius > 0 && dist(s, a.center, b.center) < a.radius + b.radius;
}

inline bool is_odd_integer(const Scalar& x) {
  return x.get_den() == 1 && mpz_odd_p(x.get_num_mpz_t()) != 0;
}

/// Pairs of overlapping balls. Each coordinate difference is at most the
/// distance, so pairs are swept on coords[0] and skipped when some listed
/// coordinate already separates them (with a rounding margin).
inline std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const SpaceSpec& s, const std::vector<Ball>& balls,
                                                                         const std::vector<balltiling::CoordId>& coords) {
  const std::size_t n = balls.size(), m = coords.size();
  std::vector<double> x(n * m), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = balls[i].radius.get_d();
    for (std::size_t k = 0; k < m; ++k) x[i * m + k] = balls[i].center.get(coords[k]).get_d();
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a * m] < x[b * m]; });
  const double rmax = n ? *std::max_element(r.begin(), r.end()) : 0;
  auto apart = [](double d, double reach) { return std::fabs(d) > reach * (1 + 1e-9) + 1e-12; };
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    for (std::size_t c = a + 1; c < n; ++c) {
      const std::size_t j = order[c];
      if (apart(x[j * m] - x[i * m], r[i] + rmax)) break;
      bool skip = false;
      for (std::size_t k = 0; k < m && !skip; ++k) skip = apart(x[j * m + k] - x[i * m + k], r[i] + r[j]);
      if (!skip && overlap(s, balls[i], balls[j])) out.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  return out;
}

}  // namespace oracle
