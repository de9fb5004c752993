// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <angleopt/errors.hpp>
#include <angleopt/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace angleopt {

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw DomainError("a unit vector needs at least 2 coordinates, got " +
                      std::to_string(coords_.size()));
  }
  double sq = 0.0;
  for (double c : coords_) {
    if (!std::isfinite(c)) throw DomainError("non-finite coordinate");
    sq += c * c;
  }
  if (sq == 0.0) throw DomainError("cannot normalize the zero vector");
  if (sq != 1.0) {
    const double norm = std::sqrt(sq);
    for (double& c : coords_) c /= norm;
  }
}

UnitVector UnitVector::basis(std::size_t ambient_dim, std::size_t axis, int sign) {
  if (ambient_dim < 2) throw DomainError("ambient dimension must be at least 2");
  if (axis >= ambient_dim) throw DomainError("basis axis out of range");
  std::vector<double> c(ambient_dim, 0.0);
  c[axis] = sign < 0 ? -1.0 : 1.0;
  return UnitVector(std::move(c), Trusted{});
}

UnitVector UnitVector::operator-() const {
  std::vector<double> c(coords_);
  for (double& v : c) v = -v;
  return UnitVector(std::move(c), Trusted{});
}

double UnitVector::dot(const UnitVector& other) const {
  if (other.coords_.size() != coords_.size()) {
    throw DimensionError("incompatible ambient spaces: R^" + std::to_string(coords_.size()) +
                         " vs R^" + std::to_string(other.coords_.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
  return s;
}

Alpha Alpha::finite(double value) {
  if (std::isinf(value) && value > 0) return infinity();
  if (!(value >= 1.0)) throw DomainError("alpha must be >= 1, got " + std::to_string(value));
  return Alpha(value, false);
}

// 2 atan2(|x - y|, |x + y|) stays accurate near 0 and pi, where acos of the
// dot product loses half the digits.
double geodesic_distance(const UnitVector& x, const UnitVector& y) {
  if (x.ambient_dim() != y.ambient_dim()) throw DimensionError("points live in different ambient spaces");
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.ambient_dim(); ++i) {
    diff += (x[i] - y[i]) * (x[i] - y[i]);
    sum += (x[i] + y[i]) * (x[i] + y[i]);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

double lambda0(double t) {
  constexpr double slack = 1e-9;
  if (!(t >= -slack && t <= kPi + slack)) {
    throw DomainError("lambda0 argument " + std::to_string(t) + " outside [0, pi]");
  }
  t = std::clamp(t, 0.0, kPi);
  // Dividing by pi/2 keeps lambda0(pi/2) == 1 and lambda0(pi/4) == 1/2 exact.
  return std::min(t, kPi - t) / (kPi / 2);
}

double kernel(const UnitVector& x, const UnitVector& y, Alpha a, double orth_tol) {
  if (a.is_infinite()) {
    if (orth_tol < 0) throw DomainError("orth_tol must be nonnegative");
    return std::abs(x.dot(y)) <= orth_tol ? 1.0 : 0.0;
  }
  const double base = lambda0(geodesic_distance(x, y));
  return a.value() == 1.0 ? base : std::pow(base, a.value());
}

}  // namespace angleopt
