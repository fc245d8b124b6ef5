#pragma once

#include <array>
#include <string>
#include <vector>

#include "balltiling/sparse_vec.hpp"

namespace balltiling {

enum class BoundaryClass { Vertex, EdgeInterior, FaceInterior };

std::string to_string(BoundaryClass c);

using Rat3 = std::array<Scalar, 3>;
using Vec3 = std::array<long double, 3>;

/// Requires ||x||_1 = 1 exactly; classified by the number of zero coordinates.
BoundaryClass classify_boundary_point(const Rat3& x);

/// Same for a vector supported on block "x" indices 0..2.
BoundaryClass classify_boundary_point(const SparseVec& x);

bool protectable(const Rat3& x);

/// a * arcsin(1/3) + b * pi.
struct SolidAngle {
  Scalar asin_coeff;
  Scalar pi_coeff;

  long double value() const;
  /// Decimal expansion with `digits` significant digits (MPFR).
  std::string value_string(int digits = 50) const;
  std::string symbolic() const;

  friend SolidAngle operator+(const SolidAngle& a, const SolidAngle& b) {
    return {a.asin_coeff + b.asin_coeff, a.pi_coeff + b.pi_coeff};
  }
  friend SolidAngle operator*(const Scalar& k, const SolidAngle& a) { return {k * a.asin_coeff, k * a.pi_coeff}; }
  friend bool operator==(const SolidAngle& a, const SolidAngle& b) = default;
};

/// "vertex", "edge", "face", "full", or a sum of terms like "2asin", "pi",
/// "1/2pi" joined by '+'.
SolidAngle parse_solid_angle(const std::string& text);

SolidAngle solid_angle_at(BoundaryClass c);

/// Solid angle of the pointed cone with apex `apex` generated by the rays
/// through the given points. Throws DomainError for degenerate cones.
long double solid_angle_numeric(const Vec3& apex, const std::vector<Vec3>& through);

/// Solid angle of the tangent cone of the unit l1 ball at x, as a sum of
/// pointed cones.
long double tangent_cone_angle(const Rat3& x);

struct DecompositionSolution {
  long vertex = 0;
  long edge = 0;
  long face = 0;

  friend bool operator==(const DecompositionSolution&, const DecompositionSolution&) = default;
  friend auto operator<=>(const DecompositionSolution&, const DecompositionSolution&) = default;
};

/// All nonnegative integer solutions of aV wV + aE wE + aF wF = target,
/// by equating coefficients over {arcsin(1/3), pi}.
std::vector<DecompositionSolution> decompose_full_angle(const SolidAngle& target);

struct ScanBounds {
  long vertex = 0;
  long edge = 0;
  long face = 0;
};

/// ceil(target / w) per constant.
ScanBounds default_scan_bounds(const SolidAngle& target);

/// Combinations within the bounds whose numeric value is within tol of target.
std::vector<DecompositionSolution> numeric_scan(const SolidAngle& target, const ScanBounds& bounds, long double tol);

/// Smallest |arcsin(1/3)/pi - p/q| over 1 <= q <= max_den, evaluated with
/// `bits` of precision. A value far above 2^-bits rules out small rational
/// relations between the two constants.
double min_rational_gap(long max_den, long bits = 200);

}  // namespace balltiling
