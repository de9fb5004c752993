// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <angleopt/geometry.hpp>
#include <angleopt/rational.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace angleopt {

enum class WeightMode { Probability, Counting };

/// An atom sitting exactly on sign * e_axis of the standard frame.
struct FrameSlot {
  std::size_t axis;
  int sign;
};

struct Atom {
  UnitVector point;
  Rational weight;
  /// Filled in by LineConfig when the point is exactly a signed basis vector.
  std::optional<FrameSlot> frame;
};

/// A finitely supported measure on S^d: a probability measure (weights sum
/// to one) or a counting measure (positive integer multiplicities).
///
/// Atoms whose coordinates are exactly a signed standard basis vector are
/// tagged with their FrameSlot; when every atom is tagged the configuration
/// is a frame configuration and kernel values between atoms are decided by
/// comparing axis indices instead of by floating-point tolerance.
class LineConfig {
 public:
  /// Throws DimensionError if an atom is not in R^{sphere_dim+1} and
  /// ValidationError if the weights break the mode's invariant.
  LineConfig(std::size_t sphere_dim, WeightMode mode, std::vector<Atom> atoms);

  /// Unit weights (Counting) or weights 1/N (Probability).
  static LineConfig from_points(std::vector<UnitVector> points, WeightMode mode);

  std::size_t sphere_dim() const { return sphere_dim_; }
  std::size_t ambient_dim() const { return sphere_dim_ + 1; }
  WeightMode mode() const { return mode_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  bool is_frame() const;
  Rational total_weight() const;

  /// Same atoms, weights divided by the total mass.
  LineConfig to_probability() const;
  /// Applies an orthogonal matrix to every point.
  LineConfig transformed(const Eigen::MatrixXd& rotation) const;
  /// Replaces atom `index`'s point by its antipode.
  LineConfig with_negated(std::size_t index) const;

 private:
  std::size_t sphere_dim_;
  WeightMode mode_;
  std::vector<Atom> atoms_;
};

/// Energy or bilinear value. `exact` is present when every kernel value could
/// be decided combinatorially (frame configurations).
struct EnergyValue {
  double value = 0.0;
  std::optional<Rational> exact;
};

/// (1/2) sum_{i,j} w_i w_j Lambda^a(x_i, x_j). For counting measures this is
/// the sum of kernel values over unordered particle pairs.
EnergyValue energy(const LineConfig& mu, Alpha a, double orth_tol = kDefaultOrthTol);

/// sum_{i,j} w^mu_i w^nu_j Lambda^a(x_i, y_j).
EnergyValue bilinear(const LineConfig& mu, const LineConfig& nu, Alpha a,
                     double orth_tol = kDefaultOrthTol);

/// N unit masses on the standard basis of R^{d+1}; particle i (0-based) sits
/// on e_{i mod (d+1)}.
LineConfig conjectured_maximizer(int d, int n);

/// sum_i a_i delta_{e_i} + b_i delta_{-e_i}. Every a_i + b_i must equal
/// 1/(d+1) exactly; zero-weight atoms are omitted.
LineConfig conjectured_maximizer_weighted(int d,
                                          std::span<const std::pair<Rational, Rational>> splits);

/// Flips each point so its first coordinate with magnitude above 1e-12 is
/// positive, then sorts atoms. Atom count is unchanged.
LineConfig canonical_fold(const LineConfig& mu);

/// canonical_fold followed by merging atoms whose projective distance
/// min(|x - y|, |x + y|) is at most tol.
LineConfig projective_merge(const LineConfig& mu, double tol);

/// Whether mu and nu agree up to an orthogonal map and antipodal
/// identification. Throws ValidationError on a weight-mode mismatch and
/// DimensionError on an ambient mismatch.
bool equivalent(const LineConfig& mu, const LineConfig& nu, double tol = 1e-9);

/// E_a of the uniform probability on S^1, 1/(2(a+1)).
double uniform_circle_energy(double a);

/// JSON form {dimension, weight_mode, atoms: [{coords, weight_num, weight_den}]}
/// where dimension is the sphere dimension d.
std::string config_to_json(const LineConfig& mu);
/// Throws ParseError on malformed JSON and ValidationError/DimensionError on
/// invariant violations.
LineConfig config_from_json(std::string_view text);

}  // namespace angleopt
