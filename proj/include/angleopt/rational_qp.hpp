// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <angleopt/geometry.hpp>
#include <angleopt/measures.hpp>
#include <angleopt/rational.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace angleopt {

class RationalSymMatrix {
 public:
  /// Throws ValidationError unless `rows` is square, non-empty and exactly
  /// symmetric.
  explicit RationalSymMatrix(std::vector<std::vector<Rational>> rows);

  std::size_t order() const { return rows_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }

 private:
  std::vector<std::vector<Rational>> rows_;
};

enum class Sense { Max, Min };

/// An exact point of the standard simplex with f(x) = (1/2) x^T A x.
struct SimplexWitness {
  std::vector<Rational> x;
  Rational value;
  /// Indices i with x_i = 0.
  std::vector<std::size_t> face;
  /// c with (Ax)_i = c on the support of x.
  Rational multiplier;
};

Rational quadratic_value(const RationalSymMatrix& a, const std::vector<Rational>& x);

/// One stationary point per face of the simplex whose KKT system
/// A_S x_S = c e, sum x_S = 1 has a solution with x_S > 0 (vertices included).
/// Candidates are ordered by face bitmask.
std::vector<SimplexWitness> kkt_candidates(const RationalSymMatrix& a);

/// Exact extremum of f over the simplex. Ties in value prefer fewer zero
/// coordinates, then the lexicographically smaller x.
SimplexWitness simplex_extremum(const RationalSymMatrix& a, Sense sense);

/// Checks that w is a consistent simplex point (exact sum, nonnegativity,
/// value) and that no point of the grid with denominator grid_res improves
/// on w.value in the given sense.
bool verify_witness(const RationalSymMatrix& a, const SimplexWitness& w, Sense sense, int grid_res);

/// Optimal weights on the fixed support of `support` for the alpha =
/// infinity energy. Throws ValidationError if two atoms coincide.
SimplexWitness support_weight_optimum(const LineConfig& support,
                                      double orth_tol = kDefaultOrthTol);

/// 2-D JSON array of "num/den" strings (plain integers are accepted).
RationalSymMatrix matrix_from_json(std::string_view text);
std::string witness_to_json(const SimplexWitness& w, Sense sense);
/// Inverse of witness_to_json (only exact fields are read).
SimplexWitness witness_from_json(std::string_view text);

}  // namespace angleopt
