// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <angleopt/errors.hpp>
#include <angleopt/rational_qp.hpp>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace angleopt {

RationalSymMatrix::RationalSymMatrix(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ValidationError("matrix must be non-empty");
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw ValidationError("matrix must be square");
  }
  for (auto& r : rows_) {
    for (auto& q : r) q.canonicalize();
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = i + 1; j < rows_.size(); ++j) {
      if (rows_[i][j] != rows_[j][i]) {
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

Rational quadratic_value(const RationalSymMatrix& a, const std::vector<Rational>& x) {
  if (x.size() != a.order()) throw DimensionError("vector length does not match matrix order");
  Rational sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] != 0) row += a(i, j) * x[j];
    }
    sum += x[i] * row;
  }
  return sum / 2;
}

namespace {

// a . t + b > 0
struct StrictIneq {
  std::vector<Rational> a;
  Rational b;

  bool operator==(const StrictIneq&) const = default;
};

void normalize(StrictIneq& q) {
  Rational scale = 0;
  for (const Rational& c : q.a) {
    if (c != 0) {
      scale = abs(c);
      break;
    }
  }
  if (scale == 0) return;
  for (Rational& c : q.a) c /= scale;
  q.b /= scale;
}

// Fourier-Motzkin elimination over strict inequalities. Back-substitution
// picks the midpoint of each admissible interval, or a unit step past a
// one-sided bound.
std::optional<std::vector<Rational>> strict_feasible_point(std::vector<StrictIneq> system, std::size_t k) {
  std::vector<std::vector<StrictIneq>> levels(k + 1);
  levels[k] = std::move(system);
  for (std::size_t v = k; v-- > 0;) {
    std::vector<StrictIneq> pos;
    std::vector<StrictIneq> neg;
    std::vector<StrictIneq> next;
    for (const StrictIneq& q : levels[v + 1]) {
      if (q.a[v] > 0) pos.push_back(q);
      else if (q.a[v] < 0) neg.push_back(q);
      else next.push_back(q);
    }
    for (const StrictIneq& p : pos) {
      for (const StrictIneq& n : neg) {
        StrictIneq c{std::vector<Rational>(k), 0};
        const Rational sp = 1 / p.a[v];
        const Rational sn = -1 / n.a[v];
        for (std::size_t i = 0; i < k; ++i) c.a[i] = sp * p.a[i] + sn * n.a[i];
        c.a[v] = 0;
        c.b = sp * p.b + sn * n.b;
        normalize(c);
        if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(std::move(c));
      }
    }
    levels[v] = std::move(next);
  }
  for (const StrictIneq& q : levels[0]) {
    if (!(q.b > 0)) return std::nullopt;
  }

  std::vector<Rational> t(k, 0);
  for (std::size_t v = 0; v < k; ++v) {
    std::optional<Rational> lower;
    std::optional<Rational> upper;
    for (const StrictIneq& q : levels[v + 1]) {
      if (q.a[v] == 0) continue;
      Rational rest = q.b;
      for (std::size_t i = 0; i < v; ++i) rest += q.a[i] * t[i];
      const Rational bound = -rest / q.a[v];
      if (q.a[v] > 0) {
        if (!lower || bound > *lower) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    if (lower && upper) t[v] = (*lower + *upper) / 2;
    else if (lower) t[v] = *lower + 1;
    else if (upper) t[v] = *upper - 1;
  }
  return t;
}

// Stationary point of f on the relative interior of the face with support
// mask `mask`, if one exists.
std::optional<SimplexWitness> face_stationary_point(const RationalSymMatrix& a, unsigned long mask) {
  const std::size_t m = a.order();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < m; ++i) {
    if (mask & (1UL << i)) support.push_back(i);
  }
  const std::size_t s = support.size();
  const std::size_t vars = s + 1;  // x_S then c

  // Rows: A_S x_S - c = 0 for each i in S, then sum x_S = 1.
  std::vector<std::vector<Rational>> rows(s + 1, std::vector<Rational>(vars + 1, 0));
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c = 0; c < s; ++c) rows[r][c] = a(support[r], support[c]);
    rows[r][s] = -1;
  }
  for (std::size_t c = 0; c < s; ++c) rows[s][c] = 1;
  rows[s][vars] = 1;

  // Exact Gauss-Jordan elimination to reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < vars && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Rational inv = 1 / rows[rank][col];
    for (Rational& e : rows[rank]) e *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col];
      for (std::size_t c = col; c <= vars; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rows[r][vars] != 0) return std::nullopt;
  }

  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0, p = 0; c < vars; ++c) {
    if (p < pivot_cols.size() && pivot_cols[p] == c) ++p;
    else free_cols.push_back(c);
  }
  const std::size_t k = free_cols.size();

  // Each variable as an affine function of the free parameters.
  std::vector<std::vector<Rational>> coef(vars, std::vector<Rational>(k, 0));
  std::vector<Rational> offset(vars, 0);
  for (std::size_t f = 0; f < k; ++f) coef[free_cols[f]][f] = 1;
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t pc = pivot_cols[r];
    offset[pc] = rows[r][vars];
    for (std::size_t f = 0; f < k; ++f) coef[pc][f] = -rows[r][free_cols[f]];
  }

  std::vector<StrictIneq> system;
  for (std::size_t i = 0; i < s; ++i) system.push_back(StrictIneq{coef[i], offset[i]});
  const auto t = strict_feasible_point(std::move(system), k);
  if (!t) return std::nullopt;

  auto eval = [&](std::size_t var) {
    Rational v = offset[var];
    for (std::size_t f = 0; f < k; ++f) v += coef[var][f] * (*t)[f];
    return v;
  };

  SimplexWitness w;
  w.x.assign(m, 0);
  for (std::size_t i = 0; i < s; ++i) w.x[support[i]] = eval(i);
  w.multiplier = eval(s);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(mask & (1UL << i))) w.face.push_back(i);
  }
  w.value = quadratic_value(a, w.x);
  return w;
}

bool better(const SimplexWitness& l, const SimplexWitness& r, Sense sense) {
  if (l.value != r.value) return sense == Sense::Max ? l.value > r.value : l.value < r.value;
  if (l.face.size() != r.face.size()) return l.face.size() < r.face.size();
  return std::lexicographical_compare(l.x.begin(), l.x.end(), r.x.begin(), r.x.end());
}

}  // namespace

std::vector<SimplexWitness> kkt_candidates(const RationalSymMatrix& a) {
  const std::size_t m = a.order();
  if (m > 20) throw DomainError("face enumeration is limited to order <= 20");
  std::vector<SimplexWitness> out;
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    if (auto w = face_stationary_point(a, mask)) out.push_back(std::move(*w));
  }
  return out;
}

SimplexWitness simplex_extremum(const RationalSymMatrix& a, Sense sense) {
  auto candidates = kkt_candidates(a);
  // Every vertex is a stationary point of its own face, so this is never empty.
  auto best = candidates.begin();
  for (auto it = candidates.begin(); it != candidates.end(); ++it) {
    if (better(*it, *best, sense)) best = it;
  }
  return *best;
}

namespace {

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

// Extreme value of z^T B z over compositions z of `total` into B.size()
// nonnegative parts.
template <class Int>
Int grid_extreme(const std::vector<std::vector<Int>>& b, int total, Sense sense) {
  const std::size_t m = b.size();
  std::vector<Int> z(m, 0);
  std::optional<Int> best;
  auto visit = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i + 1 == m) {
      z[i] = remaining;
      Int q = 0;
      for (std::size_t r = 0; r < m; ++r) {
        if (z[r] == 0) continue;
        Int row = 0;
        for (std::size_t c = 0; c < m; ++c) {
          if (z[c] != 0) row += b[r][c] * z[c];
        }
        q += z[r] * row;
      }
      if (!best || (sense == Sense::Max ? q > *best : q < *best)) best = q;
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      z[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  visit(visit, 0, total);
  return *best;
}

Integer to_integer(Int128 v) {
  const bool negative = v < 0;
  UInt128 u = negative ? -static_cast<UInt128>(v) : static_cast<UInt128>(v);
  std::string digits;
  do {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  } while (u != 0);
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return Integer(digits, 10);
}

}  // namespace

bool verify_witness(const RationalSymMatrix& a, const SimplexWitness& w, Sense sense, int grid_res) {
  if (grid_res < 1) throw DomainError("grid_res must be >= 1");
  const std::size_t m = a.order();
  if (w.x.size() != m) return false;
  Rational total = 0;
  for (const Rational& xi : w.x) {
    if (xi < 0) return false;
    total += xi;
  }
  if (total != 1) return false;
  for (std::size_t i : w.face) {
    if (i >= m || w.x[i] != 0) return false;
  }
  if (quadratic_value(a, w.x) != w.value) return false;

  // Scale A to an integer matrix B = L A so grid values compare exactly:
  // f(z / R) = z^T B z / (2 L R^2).
  Integer lcm = 1;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
  }
  std::vector<std::vector<Integer>> b(m, std::vector<Integer>(m));
  Integer max_abs = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      b[i][j] = a(i, j).get_num() * (lcm / a(i, j).get_den());
      if (abs(b[i][j]) > max_abs) max_abs = abs(b[i][j]);
    }
  }

  Integer extreme;
  const Integer bound = max_abs * Integer(grid_res) * grid_res * Integer(m) * m;
  if (bound.fits_slong_p() && max_abs.fits_slong_p()) {
    std::vector<std::vector<Int128>> bi(m, std::vector<Int128>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) bi[i][j] = b[i][j].get_si();
    }
    extreme = to_integer(grid_extreme(bi, grid_res, sense));
  } else {
    extreme = grid_extreme(b, grid_res, sense);
  }

  const Rational grid_value(extreme, Integer(2) * lcm * grid_res * grid_res);
  return sense == Sense::Max ? grid_value <= w.value : grid_value >= w.value;
}

SimplexWitness support_weight_optimum(const LineConfig& support, double orth_tol) {
  const auto atoms = support.atoms();
  if (atoms.empty()) throw ValidationError("support must contain at least one atom");
  std::vector<std::vector<Rational>> rows(atoms.size(), std::vector<Rational>(atoms.size(), 0));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const Atom& x = atoms[i];
      const Atom& y = atoms[j];
      bool same;
      bool orthogonal;
      if (x.frame && y.frame) {
        same = x.frame->axis == y.frame->axis && x.frame->sign == y.frame->sign;
        orthogonal = x.frame->axis != y.frame->axis;
      } else {
        const double c = x.point.dot(y.point);
        same = c >= 1.0 - 1e-12;
        orthogonal = std::abs(c) <= orth_tol;
      }
      if (same) {
        throw ValidationError("support atoms " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide; merge them first");
      }
      rows[i][j] = rows[j][i] = orthogonal ? 1 : 0;
    }
  }
  return simplex_extremum(RationalSymMatrix(std::move(rows)), Sense::Max);
}

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.get<long>()));
  if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long>()), 10));
  throw ParseError("matrix entries must be \"num/den\" strings or integers");
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

RationalSymMatrix matrix_from_json(std::string_view text) {
  const nlohmann::json j = parse_json(text);
  if (!j.is_array()) throw ParseError("matrix must be a 2-D JSON array");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix must be a 2-D JSON array");
    std::vector<Rational> row;
    for (const auto& e : r) row.push_back(rational_from_json(e));
    rows.push_back(std::move(row));
  }
  return RationalSymMatrix(std::move(rows));
}

std::string witness_to_json(const SimplexWitness& w, Sense sense) {
  nlohmann::json j;
  j["sense"] = sense == Sense::Max ? "max" : "min";
  j["x"] = nlohmann::json::array();
  j["x_decimal"] = nlohmann::json::array();
  for (const Rational& xi : w.x) {
    j["x"].push_back(to_string(xi));
    j["x_decimal"].push_back(xi.get_d());
  }
  j["value"] = to_string(w.value);
  j["value_decimal"] = w.value.get_d();
  j["multiplier"] = to_string(w.multiplier);
  j["face"] = w.face;
  return j.dump(2);
}

SimplexWitness witness_from_json(std::string_view text) {
  const nlohmann::json j = parse_json(text);
  try {
    SimplexWitness w;
    for (const auto& e : j.at("x")) w.x.push_back(rational_from_json(e));
    w.value = rational_from_json(j.at("value"));
    w.multiplier = j.contains("multiplier") ? rational_from_json(j.at("multiplier")) : Rational(0);
    if (j.contains("face")) w.face = j.at("face").get<std::vector<std::size_t>>();
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  }
}

}  // namespace angleopt
