// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace angleopt {

inline constexpr double kPi = 3.14159265358979323846;

/// Orthogonality tolerance used by the alpha = infinity kernel on
/// floating-point points.
inline constexpr double kDefaultOrthTol = 1e-9;

/// A point of the unit sphere S^d, stored as d+1 coordinates. Antipodal
/// points represent the same unoriented line.
class UnitVector {
 public:
  /// Normalizes `coords`. Throws DomainError for fewer than two coordinates,
  /// non-finite input, or the zero vector.
  explicit UnitVector(std::vector<double> coords);

  /// The signed standard basis vector sign * e_axis of R^ambient_dim.
  static UnitVector basis(std::size_t ambient_dim, std::size_t axis, int sign = 1);

  std::size_t ambient_dim() const { return coords_.size(); }
  std::size_t sphere_dim() const { return coords_.size() - 1; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  UnitVector operator-() const;

  /// Throws DimensionError when the ambient spaces differ.
  double dot(const UnitVector& other) const;

 private:
  struct Trusted {};
  UnitVector(std::vector<double> coords, Trusted) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

/// Exponent of the kernel family, a finite real >= 1 or infinity.
class Alpha {
 public:
  /// Throws DomainError unless value >= 1. Passing +inf yields infinity().
  static Alpha finite(double value);
  static Alpha infinity() { return Alpha(0.0, true); }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful for finite exponents.
  double value() const { return value_; }

 private:
  Alpha(double value, bool infinite) : value_(value), infinite_(infinite) {}

  double value_;
  bool infinite_;
};

/// arccos of the clamped dot product, in [0, pi].
double geodesic_distance(const UnitVector& x, const UnitVector& y);

/// Renormalized angle (2/pi) min(t, pi - t). Inputs within 1e-9 of [0, pi]
/// are clamped; anything further out throws DomainError.
double lambda0(double t);

/// Lambda^a(x, y). For a = infinity returns 1 when |x.y| <= orth_tol and 0
/// otherwise.
double kernel(const UnitVector& x, const UnitVector& y, Alpha a,
              double orth_tol = kDefaultOrthTol);

}  // namespace angleopt
