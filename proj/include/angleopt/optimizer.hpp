// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <angleopt/geometry.hpp>
#include <angleopt/measures.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace angleopt {

struct OptimizerParams {
  int n_starts = 200;
  int max_iters = 4000;
  double step_init = 1.0;
  double step_decay = 0.5;
  double grad_tol = 1e-12;
  bool anneal = false;
  double anneal_temp_init = 1e-2;
  double anneal_cooling = 0.98;
  int anneal_sweeps = 200;
  /// Softmin temperature for min(t, pi - t); 0 optimizes the exact kernel.
  double smoothing = 0.0;
  std::uint64_t master_seed = 20201015;
  /// Tolerance for the equivalence verdict against the conjectured maximizer.
  double equivalence_tol = 1e-4;
  /// 0 means ANGLEOPT_THREADS, or the machine's parallelism when unset.
  unsigned workers = 0;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Unknown keys are rejected. Throws ParseError or DomainError.
OptimizerParams params_from_json(std::string_view text);
std::string params_to_json(const OptimizerParams& params);

/// Rows of `points` are unit vectors in R^{d+1}.
using PointSet = Eigen::MatrixXd;

/// E_alpha of (1/N) sum_i delta_{x_i} for finite alpha.
double uniform_energy(const PointSet& points, double alpha, double smoothing = 0.0);

struct GradientResult {
  /// Row i is the Riemannian gradient at point i (tangent to the sphere).
  PointSet gradient;
  /// Set when alpha == 1 and a pair is coincident or antipodal, where the
  /// kernel has no derivative; such pairs contribute zero.
  bool degenerate_pair = false;
};

GradientResult energy_gradient(const PointSet& points, double alpha, double smoothing = 0.0);

/// Tangent gradients for a list of unit vectors; `a` must be finite.
std::vector<Eigen::VectorXd> energy_gradient(std::span<const UnitVector> points, Alpha a);

struct OptRun {
  int d = 0;
  int n = 0;
  double alpha = 1.0;
  OptimizerParams params;
  /// Probability measure with N atoms of weight 1/N, canonically folded.
  LineConfig best_config;
  double best_energy = 0.0;
  int best_start = 0;
  std::vector<double> per_start_energies;
  std::vector<bool> converged_flags;

  double converged_fraction() const;
};

/// Multistart projected gradient ascent of E_alpha over N-point uniform
/// configurations on S^d. Deterministic in (d, n, alpha, params) regardless
/// of the worker count.
OptRun optimize(int d, int n, double alpha, const OptimizerParams& params);

struct SweepRow {
  double alpha = 1.0;
  int d = 0;
  int n = 0;
  double best_energy = 0.0;
  double conjectured_energy = 0.0;
  /// conjectured_energy - best_energy; negative beyond tolerance means the
  /// search found a configuration beating the conjectured maximizer.
  double gap = 0.0;
  bool equivalent = false;
  double converged_fraction = 0.0;
  std::uint64_t seed = 0;
};

SweepRow summarize(const OptRun& run);

/// One optimize() per alpha. Throws DomainError unless alphas are ascending
/// and >= 1.
std::vector<SweepRow> alpha_sweep(int d, int n, std::span<const double> alphas,
                                  const OptimizerParams& params);

/// Columns alpha,d,N,best_energy,conjectured_energy,gap,equivalent,
/// converged_fraction,seed.
std::string sweep_csv(std::span<const SweepRow> rows);

/// Rows whose best energy beats the conjectured energy by more than tol.
std::size_t count_exceedances(std::span<const SweepRow> rows, double tol = 1e-6);

}  // namespace angleopt
