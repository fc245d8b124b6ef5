#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace balltiling {

/// Exact rational number. GMP keeps it in canonical reduced form.
using Scalar = mpq_class;

/// Index of a coordinate of the c00 tail. Unbounded so that lifted centers
/// can use arbitrarily large coordinate ranges.
using TailIndex = mpz_class;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "3", "-4/3", "0.25", "1e-3" or with a unicode minus sign. Decimals
/// are converted exactly.
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Scalar& s);

TailIndex parse_index(std::string_view text);
std::string to_string(const TailIndex& i);

inline Scalar abs(const Scalar& s) { return s < 0 ? Scalar(-s) : s; }

inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

/// 2^-j as an exact rational.
Scalar dyadic(unsigned j);

/// Floor of a rational as a big integer.
mpz_class floor(const Scalar& s);

/// Nearest-double conversion, for reporting only.
inline double to_double(const Scalar& s) { return s.get_d(); }

}  // namespace balltiling
