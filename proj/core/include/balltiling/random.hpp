#pragma once

#include <cstdint>
#include <random>

#include "balltiling/scalar.hpp"

namespace balltiling {

/// Seeded generator of exact dyadic rationals. Deterministic across
/// platforms: only integer draws from mt19937_64 are used.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }

  /// Dyadic rational k / 2^bits, uniform on the grid of [lo, hi].
  Scalar dyadic_in(const Scalar& lo, const Scalar& hi, unsigned bits = 20) {
    std::uint64_t steps = std::uint64_t{1} << bits;
    std::uint64_t k = rng_() % (steps + 1);
    Scalar t(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(steps)));
    t.canonicalize();
    return lo + t * (hi - lo);
  }

  /// Small rational p/q with |p| <= max_num, 1 <= q <= max_den.
  Scalar small_rational(std::int64_t max_num, std::int64_t max_den) {
    Scalar out(static_cast<long>(integer(-max_num, max_num)), static_cast<long>(integer(1, max_den)));
    out.canonicalize();
    return out;
  }

  bool coin() { return (rng_() & 1U) != 0; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace balltiling
