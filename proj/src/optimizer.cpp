// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <angleopt/closed_form.hpp>
#include <angleopt/errors.hpp>
#include <angleopt/optimizer.hpp>

#include "json.hpp"
#include "workers.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace angleopt {

void OptimizerParams::validate() const {
  if (n_starts < 1) throw DomainError("n_starts must be >= 1");
  if (max_iters < 1) throw DomainError("max_iters must be >= 1");
  if (!(step_init > 0)) throw DomainError("step_init must be > 0");
  if (!(step_decay > 0 && step_decay < 1)) throw DomainError("step_decay must lie in (0, 1)");
  if (!(grad_tol > 0)) throw DomainError("grad_tol must be > 0");
  if (anneal) {
    if (!(anneal_temp_init > 0)) throw DomainError("anneal_temp_init must be > 0");
    if (!(anneal_cooling > 0 && anneal_cooling < 1)) throw DomainError("anneal_cooling must lie in (0, 1)");
    if (anneal_sweeps < 0) throw DomainError("anneal_sweeps must be >= 0");
  }
  if (!(smoothing >= 0)) throw DomainError("smoothing must be >= 0");
  if (!(equivalence_tol > 0)) throw DomainError("equivalence_tol must be > 0");
}

OptimizerParams params_from_json(std::string_view text) {
  OptimizerParams p;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid optimizer JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("optimizer parameters must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n_starts") p.n_starts = value.get<int>();
      else if (key == "max_iters") p.max_iters = value.get<int>();
      else if (key == "step_init") p.step_init = value.get<double>();
      else if (key == "step_decay") p.step_decay = value.get<double>();
      else if (key == "grad_tol") p.grad_tol = value.get<double>();
      else if (key == "anneal") p.anneal = value.get<bool>();
      else if (key == "anneal_temp_init") p.anneal_temp_init = value.get<double>();
      else if (key == "anneal_cooling") p.anneal_cooling = value.get<double>();
      else if (key == "anneal_sweeps") p.anneal_sweeps = value.get<int>();
      else if (key == "smoothing") p.smoothing = value.get<double>();
      else if (key == "equivalence_tol") p.equivalence_tol = value.get<double>();
      else if (key == "workers") p.workers = value.get<unsigned>();
      else if (key == "master_seed") {
        p.master_seed = value.is_string() ? std::stoull(value.get<std::string>()) : value.get<std::uint64_t>();
      } else {
        throw ParseError("unknown optimizer parameter '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad optimizer parameter type: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("bad master_seed: ") + e.what());
  }
  p.validate();
  return p;
}

std::string params_to_json(const OptimizerParams& p) {
  nlohmann::json j;
  j["n_starts"] = p.n_starts;
  j["max_iters"] = p.max_iters;
  j["step_init"] = p.step_init;
  j["step_decay"] = p.step_decay;
  j["grad_tol"] = p.grad_tol;
  j["anneal"] = p.anneal;
  j["anneal_temp_init"] = p.anneal_temp_init;
  j["anneal_cooling"] = p.anneal_cooling;
  j["anneal_sweeps"] = p.anneal_sweeps;
  j["smoothing"] = p.smoothing;
  j["master_seed"] = p.master_seed;
  j["equivalence_tol"] = p.equivalence_tol;
  j["workers"] = p.workers;
  return j.dump();
}

namespace {

struct PairTerm {
  double lambda;  // kernel base value in [0, 1]
  double slope;   // d lambda / d rho
  double sin_rho;
};

// Geodesic angle via atan2 keeps full precision near 0 and pi, where arccos
// of the dot product loses half the digits.
PairTerm pair_term(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                   double smoothing) {
  const double c = x.dot(y);
  const double s = (y - c * x).norm();
  const double rho = std::atan2(s, c);
  double m;
  double dm;
  if (smoothing > 0) {
    // Softmin of (rho, pi - rho) with temperature `smoothing`.
    const double gap = std::abs(kPi - 2 * rho);
    m = std::min(rho, kPi - rho) - smoothing * std::log1p(std::exp(-gap / smoothing));
    dm = std::tanh((kPi - 2 * rho) / (2 * smoothing));
    m = std::max(m, 0.0);
  } else {
    m = std::min(rho, kPi - rho);
    // At an exactly orthogonal pair the two one-sided slopes cancel; 0 is in
    // the subdifferential and makes the pair stationary.
    dm = c > 0 ? 1.0 : (c < 0 ? -1.0 : 0.0);
  }
  return PairTerm{m / (kPi / 2), dm / (kPi / 2), s};
}

double pow_alpha(double base, double alpha) { return alpha == 1.0 ? base : std::pow(base, alpha); }

void normalize_rows(PointSet& x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i).normalize();
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PointSet random_points(int n, int ambient, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  PointSet x(n, ambient);
  for (int i = 0; i < n; ++i) {
    do {
      for (int k = 0; k < ambient; ++k) x(i, k) = gauss(rng);
    } while (x.row(i).norm() < 1e-12);
  }
  normalize_rows(x);
  return x;
}

}  // namespace

double uniform_energy(const PointSet& points, double alpha, double smoothing) {
  const auto n = points.rows();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      sum += pow_alpha(pair_term(points.row(i).transpose(), points.row(j).transpose(), smoothing).lambda, alpha);
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

GradientResult energy_gradient(const PointSet& points, double alpha, double smoothing) {
  if (!std::isfinite(alpha) || alpha < 1.0) throw DomainError("energy_gradient needs finite alpha >= 1");
  const auto n = points.rows();
  GradientResult out{PointSet::Zero(n, points.cols()), false};
  if (n == 0) return out;
  const double w2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = points.row(i).transpose();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::VectorXd xj = points.row(j).transpose();
      const PairTerm t = pair_term(xi, xj, smoothing);
      if (t.sin_rho == 0.0) {
        // Coincident or antipodal: Lambda^alpha is flat there when alpha > 1.
        if (alpha == 1.0) out.degenerate_pair = true;
        continue;
      }
      const double de_drho = w2 * alpha * pow_alpha(t.lambda, alpha - 1.0) * t.slope;
      const double c = xi.dot(xj);
      // Moving x_i toward x_j along the great circle decreases rho at unit rate.
      const Eigen::VectorXd u_ij = (xj - c * xi) / t.sin_rho;
      const Eigen::VectorXd u_ji = (xi - c * xj) / t.sin_rho;
      out.gradient.row(i) -= de_drho * u_ij.transpose();
      out.gradient.row(j) -= de_drho * u_ji.transpose();
    }
  }
  return out;
}

std::vector<Eigen::VectorXd> energy_gradient(std::span<const UnitVector> points, Alpha a) {
  if (a.is_infinite()) throw DomainError("energy_gradient needs a finite alpha");
  if (points.empty()) return {};
  const auto ambient = static_cast<Eigen::Index>(points.front().ambient_dim());
  PointSet x(static_cast<Eigen::Index>(points.size()), ambient);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<Eigen::Index>(points[i].ambient_dim()) != ambient) {
      throw DimensionError("points live in different ambient spaces");
    }
    for (Eigen::Index k = 0; k < ambient; ++k) x(static_cast<Eigen::Index>(i), k) = points[i][static_cast<std::size_t>(k)];
  }
  const GradientResult g = energy_gradient(x, a.value());
  std::vector<Eigen::VectorXd> out;
  out.reserve(points.size());
  for (Eigen::Index i = 0; i < g.gradient.rows(); ++i) out.emplace_back(g.gradient.row(i).transpose());
  return out;
}

double OptRun::converged_fraction() const {
  if (converged_flags.empty()) return 0.0;
  const auto ok = std::count(converged_flags.begin(), converged_flags.end(), true);
  return static_cast<double>(ok) / static_cast<double>(converged_flags.size());
}

namespace {

struct StartResult {
  PointSet points;
  double energy = 0.0;
  bool converged = false;
};

void anneal(PointSet& x, double alpha, const OptimizerParams& p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<Eigen::Index> pick(0, x.rows() - 1);
  double e = uniform_energy(x, alpha, p.smoothing);
  PointSet best = x;
  double best_e = e;
  double temp = p.anneal_temp_init;
  for (int sweep = 0; sweep < p.anneal_sweeps; ++sweep) {
    const double scale = 0.5 * std::sqrt(temp / p.anneal_temp_init) + 1e-3;
    for (Eigen::Index move = 0; move < x.rows(); ++move) {
      const Eigen::Index i = pick(rng);
      const Eigen::RowVectorXd old = x.row(i);
      for (Eigen::Index k = 0; k < x.cols(); ++k) x(i, k) += scale * gauss(rng);
      if (x.row(i).norm() < 1e-12) {
        x.row(i) = old;
        continue;
      }
      x.row(i).normalize();
      const double candidate = uniform_energy(x, alpha, p.smoothing);
      const double delta = candidate - e;
      if (delta >= 0 || unif(rng) < std::exp(delta / temp)) {
        e = candidate;
        if (e > best_e) {
          best_e = e;
          best = x;
        }
      } else {
        x.row(i) = old;
      }
    }
    temp *= p.anneal_cooling;
  }
  x = best;
}

StartResult run_start(int d, int n, double alpha, const OptimizerParams& p, int start) {
  std::mt19937_64 rng(splitmix64(p.master_seed ^ splitmix64(static_cast<std::uint64_t>(start) + 1)));
  StartResult r;
  r.points = random_points(n, d + 1, rng);
  if (p.anneal) anneal(r.points, alpha, p, rng);

  double e = uniform_energy(r.points, alpha, p.smoothing);
  double step = p.step_init;
  const double min_step = p.grad_tol * p.step_init;
  int iter = 0;
  for (; iter < p.max_iters; ++iter) {
    const GradientResult g = energy_gradient(r.points, alpha, p.smoothing);
    if (g.gradient.norm() < p.grad_tol) {
      r.converged = true;
      break;
    }
    bool accepted = false;
    while (step >= min_step) {
      PointSet trial = r.points + step * g.gradient;
      normalize_rows(trial);
      const double candidate = uniform_energy(trial, alpha, p.smoothing);
      if (candidate > e) {
        r.points = std::move(trial);
        e = candidate;
        accepted = true;
        break;
      }
      step *= p.step_decay;
    }
    if (!accepted) {
      r.converged = true;
      break;
    }
    step = std::min(p.step_init, step / p.step_decay);
  }
  r.energy = p.smoothing > 0 ? uniform_energy(r.points, alpha) : e;
  return r;
}

}  // namespace

OptRun optimize(int d, int n, double alpha, const OptimizerParams& params) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (n < 1) throw DomainError("N must be >= 1");
  if (!std::isfinite(alpha) || alpha < 1.0) throw DomainError("optimize needs finite alpha >= 1");
  params.validate();

  std::vector<StartResult> results(static_cast<std::size_t>(params.n_starts));
  detail::parallel_for(results.size(), resolve_worker_count(params.workers), [&](std::size_t s) {
    results[s] = run_start(d, n, alpha, params, static_cast<int>(s));
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].energy > results[best].energy) best = s;
  }

  std::vector<UnitVector> points;
  for (Eigen::Index i = 0; i < results[best].points.rows(); ++i) {
    const Eigen::RowVectorXd row = results[best].points.row(i);
    points.emplace_back(std::vector<double>(row.data(), row.data() + row.size()));
  }
  OptRun run{d, n, alpha, params,
             canonical_fold(LineConfig::from_points(std::move(points), WeightMode::Probability)),
             results[best].energy, static_cast<int>(best), {}, {}};
  for (const StartResult& r : results) {
    run.per_start_energies.push_back(r.energy);
    run.converged_flags.push_back(r.converged);
  }
  return run;
}

SweepRow summarize(const OptRun& run) {
  const LineConfig conjectured = conjectured_maximizer(run.d, run.n).to_probability();
  SweepRow row;
  row.alpha = run.alpha;
  row.d = run.d;
  row.n = run.n;
  row.best_energy = run.best_energy;
  row.conjectured_energy = energy(conjectured, Alpha::finite(run.alpha)).value;
  row.gap = row.conjectured_energy - row.best_energy;
  row.equivalent = equivalent(run.best_config, conjectured, run.params.equivalence_tol);
  row.converged_fraction = run.converged_fraction();
  row.seed = run.params.master_seed;
  return row;
}

std::vector<SweepRow> alpha_sweep(int d, int n, std::span<const double> alphas, const OptimizerParams& params) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!std::isfinite(alphas[i]) || alphas[i] < 1.0) throw DomainError("sweep alphas must be finite and >= 1");
    if (i > 0 && alphas[i] < alphas[i - 1]) throw DomainError("sweep alphas must be ascending");
  }
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) rows.push_back(summarize(optimize(d, n, a, params)));
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "alpha,d,N,best_energy,conjectured_energy,gap,equivalent,converged_fraction,seed\n";
  char buf[512];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.15g,%d,%d,%.15g,%.15g,%.15g,%s,%.15g,%" PRIu64 "\n", r.alpha, r.d, r.n,
                  r.best_energy, r.conjectured_energy, r.gap, r.equivalent ? "true" : "false",
                  r.converged_fraction, r.seed);
    out << buf;
  }
  return out.str();
}

std::size_t count_exceedances(std::span<const SweepRow> rows, double tol) {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [tol](const SweepRow& r) { return r.gap < -tol; }));
}

}  // namespace angleopt
