// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <angleopt/errors.hpp>
#include <angleopt/measures.hpp>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

namespace angleopt {

namespace {

std::optional<FrameSlot> detect_frame_slot(const UnitVector& x) {
  std::optional<FrameSlot> slot;
  for (std::size_t i = 0; i < x.ambient_dim(); ++i) {
    const double c = x[i];
    if (c == 0.0) continue;
    if ((c != 1.0 && c != -1.0) || slot) return std::nullopt;
    slot = FrameSlot{i, c > 0 ? 1 : -1};
  }
  return slot;
}

bool is_positive_integer(const Rational& q) { return q.get_den() == 1 && q > 0; }

double projective_distance(std::span<const double> x, std::span<const double> y) {
  double minus = 0.0;
  double plus = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    minus += (x[i] - y[i]) * (x[i] - y[i]);
    plus += (x[i] + y[i]) * (x[i] + y[i]);
  }
  return std::sqrt(std::min(minus, plus));
}

UnitVector fold_point(const UnitVector& x) {
  for (std::size_t i = 0; i < x.ambient_dim(); ++i) {
    if (std::abs(x[i]) > 1e-12) return x[i] < 0 ? -x : x;
  }
  return x;
}

}  // namespace

LineConfig::LineConfig(std::size_t sphere_dim, WeightMode mode, std::vector<Atom> atoms)
    : sphere_dim_(sphere_dim), mode_(mode), atoms_(std::move(atoms)) {
  if (sphere_dim_ < 1) throw DimensionError("sphere dimension must be at least 1");
  Rational total = 0;
  for (Atom& atom : atoms_) {
    if (atom.point.ambient_dim() != ambient_dim()) {
      throw DimensionError("atom lives in R^" + std::to_string(atom.point.ambient_dim()) +
                           ", configuration in R^" + std::to_string(ambient_dim()));
    }
    atom.weight.canonicalize();
    if (atom.weight < 0) throw ValidationError("negative atom weight " + to_string(atom.weight));
    if (mode_ == WeightMode::Counting && !is_positive_integer(atom.weight)) {
      throw ValidationError("counting atoms need positive integer weights, got " +
                            to_string(atom.weight));
    }
    atom.frame = detect_frame_slot(atom.point);
    total += atom.weight;
  }
  if (mode_ == WeightMode::Probability && total != 1) {
    throw ValidationError("probability weights sum to " + to_string(total) + ", not 1");
  }
}

LineConfig LineConfig::from_points(std::vector<UnitVector> points, WeightMode mode) {
  if (points.empty()) throw ValidationError("configuration needs at least one point");
  const std::size_t d = points.front().sphere_dim();
  const Rational w = mode == WeightMode::Counting ? Rational(1) : Rational(1, points.size());
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (UnitVector& p : points) atoms.push_back(Atom{std::move(p), w, std::nullopt});
  return LineConfig(d, mode, std::move(atoms));
}

bool LineConfig::is_frame() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.frame.has_value(); });
}

Rational LineConfig::total_weight() const {
  Rational total = 0;
  for (const Atom& a : atoms_) total += a.weight;
  return total;
}

LineConfig LineConfig::to_probability() const {
  const Rational total = total_weight();
  if (total == 0) throw ValidationError("cannot normalize a zero measure");
  std::vector<Atom> atoms(atoms_);
  for (Atom& a : atoms) a.weight /= total;
  return LineConfig(sphere_dim_, WeightMode::Probability, std::move(atoms));
}

LineConfig LineConfig::transformed(const Eigen::MatrixXd& rotation) const {
  const auto n = static_cast<Eigen::Index>(ambient_dim());
  if (rotation.rows() != n || rotation.cols() != n) {
    throw DimensionError("rotation must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(a.point.coords().data(), n);
    const Eigen::VectorXd y = rotation * x;
    atoms.push_back(Atom{UnitVector(std::vector<double>(y.data(), y.data() + n)), a.weight, std::nullopt});
  }
  return LineConfig(sphere_dim_, mode_, std::move(atoms));
}

LineConfig LineConfig::with_negated(std::size_t index) const {
  if (index >= atoms_.size()) throw DomainError("atom index out of range");
  std::vector<Atom> atoms(atoms_);
  atoms[index].point = -atoms[index].point;
  return LineConfig(sphere_dim_, mode_, std::move(atoms));
}

EnergyValue bilinear(const LineConfig& mu, const LineConfig& nu, Alpha a, double orth_tol) {
  if (mu.ambient_dim() != nu.ambient_dim()) {
    throw DimensionError("bilinear form of measures on different spheres");
  }
  EnergyValue out;
  const bool exact = mu.is_frame() && nu.is_frame();
  Rational exact_sum = 0;
  double sum = 0.0;
  for (const Atom& x : mu.atoms()) {
    const double wx = x.weight.get_d();
    for (const Atom& y : nu.atoms()) {
      if (exact) {
        // Frame atoms are either on the same line (kernel 0) or orthogonal (kernel 1).
        if (x.frame->axis != y.frame->axis) {
          exact_sum += x.weight * y.weight;
          sum += wx * y.weight.get_d();
        }
      } else {
        sum += wx * y.weight.get_d() * kernel(x.point, y.point, a, orth_tol);
      }
    }
  }
  out.value = exact ? exact_sum.get_d() : sum;
  if (exact) out.exact = exact_sum;
  return out;
}

EnergyValue energy(const LineConfig& mu, Alpha a, double orth_tol) {
  EnergyValue b = bilinear(mu, mu, a, orth_tol);
  b.value /= 2;
  if (b.exact) *b.exact /= 2;
  return b;
}

LineConfig conjectured_maximizer(int d, int n) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (n < 1) throw DomainError("N must be >= 1");
  const auto ambient = static_cast<std::size_t>(d) + 1;
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    atoms.push_back(Atom{UnitVector::basis(ambient, static_cast<std::size_t>(i) % ambient), 1, std::nullopt});
  }
  return LineConfig(static_cast<std::size_t>(d), WeightMode::Counting, std::move(atoms));
}

LineConfig conjectured_maximizer_weighted(int d,
                                          std::span<const std::pair<Rational, Rational>> splits) {
  if (d < 1) throw DomainError("d must be >= 1");
  const auto ambient = static_cast<std::size_t>(d) + 1;
  if (splits.size() != ambient) {
    throw ValidationError("expected " + std::to_string(ambient) + " splits, got " +
                          std::to_string(splits.size()));
  }
  const Rational share(1, static_cast<unsigned long>(ambient));
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < ambient; ++i) {
    const auto& [a, b] = splits[i];
    if (a < 0 || b < 0) throw ValidationError("split weights must be nonnegative");
    if (a + b != share) {
      throw ValidationError("split " + std::to_string(i) + " sums to " + to_string(Rational(a + b)) +
                            ", expected " + to_string(share));
    }
    if (a != 0) atoms.push_back(Atom{UnitVector::basis(ambient, i, 1), a, std::nullopt});
    if (b != 0) atoms.push_back(Atom{UnitVector::basis(ambient, i, -1), b, std::nullopt});
  }
  return LineConfig(static_cast<std::size_t>(d), WeightMode::Probability, std::move(atoms));
}

LineConfig canonical_fold(const LineConfig& mu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const Atom& a : mu.atoms()) atoms.push_back(Atom{fold_point(a.point), a.weight, std::nullopt});
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) {
    const auto lc = l.point.coords();
    const auto rc = r.point.coords();
    if (std::lexicographical_compare(lc.begin(), lc.end(), rc.begin(), rc.end())) return true;
    if (std::lexicographical_compare(rc.begin(), rc.end(), lc.begin(), lc.end())) return false;
    return l.weight < r.weight;
  });
  return LineConfig(mu.sphere_dim(), mu.mode(), std::move(atoms));
}

LineConfig projective_merge(const LineConfig& mu, double tol) {
  const LineConfig folded = canonical_fold(mu);
  std::vector<Atom> groups;
  for (const Atom& a : folded.atoms()) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Atom& g) {
      return projective_distance(g.point.coords(), a.point.coords()) <= tol;
    });
    if (it == groups.end()) {
      groups.push_back(a);
    } else {
      it->weight += a.weight;
    }
  }
  return LineConfig(mu.sphere_dim(), mu.mode(), std::move(groups));
}

namespace {

struct PairKey {
  Rational w_lo;
  Rational w_hi;
  double abs_dot;
};

std::vector<PairKey> pair_invariants(const LineConfig& mu) {
  std::vector<PairKey> keys;
  const auto atoms = mu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const Rational& wi = atoms[i].weight;
      const Rational& wj = atoms[j].weight;
      keys.push_back(PairKey{wi < wj ? wi : wj, wi < wj ? wj : wi,
                             std::abs(atoms[i].point.dot(atoms[j].point))});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const PairKey& l, const PairKey& r) {
    if (l.w_lo != r.w_lo) return l.w_lo < r.w_lo;
    if (l.w_hi != r.w_hi) return l.w_hi < r.w_hi;
    return l.abs_dot < r.abs_dot;
  });
  return keys;
}

Eigen::VectorXd as_vector(const UnitVector& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.coords().data(), static_cast<Eigen::Index>(x.ambient_dim()));
}

// Indices of atoms whose points are linearly independent, chosen greedily.
std::vector<std::size_t> spanning_atoms(const LineConfig& mu) {
  std::vector<std::size_t> chosen;
  std::vector<Eigen::VectorXd> ortho;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    Eigen::VectorXd r = as_vector(mu.atoms()[i].point);
    for (const auto& q : ortho) r -= q.dot(r) * q;
    const double norm = r.norm();
    if (norm > 1e-6) {
      ortho.push_back(r / norm);
      chosen.push_back(i);
    }
    if (ortho.size() == mu.ambient_dim()) break;
  }
  return chosen;
}

class Aligner {
 public:
  Aligner(const LineConfig& mu, const LineConfig& nu, double tol)
      : mu_(mu), nu_(nu), tol_(tol), basis_(spanning_atoms(mu)) {}

  bool run() {
    used_.assign(nu_.size(), false);
    return extend(0);
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == basis_.size()) return verify();
    const Atom& p = mu_.atoms()[basis_[depth]];
    for (std::size_t j = 0; j < nu_.size(); ++j) {
      if (used_[j] || nu_.atoms()[j].weight != p.weight) continue;
      for (int sign : {1, -1}) {
        // A global sign flip is itself orthogonal, so the first sign is free.
        if (depth == 0 && sign < 0) continue;
        if (!consistent(depth, j, sign)) continue;
        used_[j] = true;
        match_.emplace_back(j, sign);
        if (extend(depth + 1)) return true;
        match_.pop_back();
        used_[j] = false;
      }
    }
    return false;
  }

  bool consistent(std::size_t depth, std::size_t j, int sign) const {
    const UnitVector& p = mu_.atoms()[basis_[depth]].point;
    const UnitVector& q = nu_.atoms()[j].point;
    for (std::size_t a = 0; a < depth; ++a) {
      const auto [ja, sa] = match_[a];
      const double lhs = p.dot(mu_.atoms()[basis_[a]].point);
      const double rhs = sign * sa * q.dot(nu_.atoms()[ja].point);
      if (std::abs(lhs - rhs) > tol_) return false;
    }
    return true;
  }

  bool verify() const {
    const auto dim = static_cast<Eigen::Index>(mu_.ambient_dim());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      const auto [j, s] = match_[a];
      h += (s * as_vector(nu_.atoms()[j].point)) * as_vector(mu_.atoms()[basis_[a]].point).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd m = svd.matrixU() * svd.matrixV().transpose();

    std::vector<bool> taken(nu_.size(), false);
    for (const Atom& x : mu_.atoms()) {
      const Eigen::VectorXd mx = m * as_vector(x.point);
      std::size_t best = nu_.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < nu_.size(); ++j) {
        if (taken[j] || nu_.atoms()[j].weight != x.weight) continue;
        const Eigen::VectorXd y = as_vector(nu_.atoms()[j].point);
        const double dist = std::min((mx - y).norm(), (mx + y).norm());
        if (dist < best_dist) {
          best_dist = dist;
          best = j;
        }
      }
      if (best == nu_.size() || best_dist > tol_) return false;
      taken[best] = true;
    }
    return true;
  }

  const LineConfig& mu_;
  const LineConfig& nu_;
  double tol_;
  std::vector<std::size_t> basis_;
  std::vector<bool> used_;
  std::vector<std::pair<std::size_t, int>> match_;
};

}  // namespace

bool equivalent(const LineConfig& mu, const LineConfig& nu, double tol) {
  if (mu.mode() != nu.mode()) throw ValidationError("cannot compare probability and counting measures");
  if (mu.ambient_dim() != nu.ambient_dim()) throw DimensionError("measures live on different spheres");
  if (tol < 0) throw DomainError("tolerance must be nonnegative");

  const LineConfig m = projective_merge(mu, tol);
  const LineConfig n = projective_merge(nu, tol);
  if (m.size() != n.size()) return false;
  if (m.empty()) return true;

  std::vector<Rational> wm;
  std::vector<Rational> wn;
  for (const Atom& a : m.atoms()) wm.push_back(a.weight);
  for (const Atom& a : n.atoms()) wn.push_back(a.weight);
  std::sort(wm.begin(), wm.end());
  std::sort(wn.begin(), wn.end());
  if (wm != wn) return false;

  const auto km = pair_invariants(m);
  const auto kn = pair_invariants(n);
  for (std::size_t i = 0; i < km.size(); ++i) {
    if (km[i].w_lo != kn[i].w_lo || km[i].w_hi != kn[i].w_hi) return false;
    if (std::abs(km[i].abs_dot - kn[i].abs_dot) > tol) return false;
  }
  return Aligner(m, n, tol).run();
}

double uniform_circle_energy(double a) {
  if (!std::isfinite(a) || !(a >= 1.0)) throw DomainError("uniform_circle_energy needs finite alpha >= 1");
  // Lambda of a uniform pair on S^1 is uniform on [0, 1], so E = (1/2) E[U^a].
  return 1.0 / (2.0 * (a + 1.0));
}

namespace {

nlohmann::json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const nlohmann::json& j, const char* field) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long>()), 10);
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw ParseError(std::string(field) + " must be an integer");
    return q.get_num();
  }
  throw ParseError(std::string(field) + " must be an integer or integer string");
}

}  // namespace

std::string config_to_json(const LineConfig& mu) {
  nlohmann::json j;
  j["dimension"] = mu.sphere_dim();
  j["weight_mode"] = mu.mode() == WeightMode::Probability ? "probability" : "counting";
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : mu.atoms()) {
    nlohmann::json atom;
    atom["coords"] = std::vector<double>(a.point.coords().begin(), a.point.coords().end());
    atom["weight_num"] = integer_json(a.weight.get_num());
    atom["weight_den"] = integer_json(a.weight.get_den());
    j["atoms"].push_back(std::move(atom));
  }
  return j.dump(2);
}

LineConfig config_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("configuration must be a JSON object");
    const auto d = j.at("dimension").get<long>();
    if (d < 1) throw ValidationError("dimension must be >= 1");
    const std::string mode_text = j.at("weight_mode").get<std::string>();
    WeightMode mode;
    if (mode_text == "probability") {
      mode = WeightMode::Probability;
    } else if (mode_text == "counting") {
      mode = WeightMode::Counting;
    } else {
      throw ValidationError("weight_mode must be 'probability' or 'counting'");
    }
    std::vector<Atom> atoms;
    for (const auto& atom : j.at("atoms")) {
      auto coords = atom.at("coords").get<std::vector<double>>();
      Integer num = integer_from_json(atom.at("weight_num"), "weight_num");
      Integer den = atom.contains("weight_den") ? integer_from_json(atom.at("weight_den"), "weight_den") : Integer(1);
      if (den == 0) throw ValidationError("zero weight denominator");
      Rational w(num, den);
      w.canonicalize();
      atoms.push_back(Atom{UnitVector(std::move(coords)), w, std::nullopt});
    }
    return LineConfig(static_cast<std::size_t>(d), mode, std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed configuration: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace angleopt
