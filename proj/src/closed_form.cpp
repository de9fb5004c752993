// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <angleopt/closed_form.hpp>
#include <angleopt/errors.hpp>

#include "workers.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>

namespace angleopt {

namespace {

// ceil(num / den) for num >= 0, den > 0.
long ceil_div(long num, long den) { return (num + den - 1) / den; }

}  // namespace

Integer f_dn(int d, int n) {
  if (d < 0 || n < 0) throw DomainError("f_dn needs d >= 0 and n >= 0");
  Integer value = 0;
  if (d == 0) return value;
  for (long m = 0; m < n; ++m) value += ceil_div(static_cast<long>(d) * m, d + 1);
  return value;
}

Integer f_dnk(int d, int n, int k) {
  if (d < 1) throw DomainError("f_dnk needs d >= 1");
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("f_dnk needs 0 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  }
  return f_dn(d - 1, k) + Integer(k) * Integer(n - k);
}

PartitionMax partition_oracle(int d, int n) {
  if (d < 1 || n < 0) throw DomainError("partition_oracle needs d >= 1 and n >= 0");
  const auto parts = static_cast<std::size_t>(d) + 1;
  PartitionMax best{Integer(-1), {}};
  std::vector<int> current;

  // Parts are generated in nonincreasing order, largest first part first.
  std::function<void(int, int)> walk = [&](int remaining, int cap) {
    if (remaining == 0) {
      Integer squares = 0;
      for (int p : current) squares += Integer(p) * p;
      const Integer value = (Integer(n) * n - squares) / 2;
      if (value > best.max_value) {
        best.max_value = value;
        best.profile = current;
        best.profile.resize(parts, 0);
      }
      return;
    }
    if (current.size() == parts) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      current.push_back(p);
      walk(remaining - p, p);
      current.pop_back();
    }
  };
  walk(n, n);
  return best;
}

std::size_t LemmaReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const LemmaCheck& c) { return !c.pass; }));
}

std::string LemmaReport::to_csv() const {
  std::ostringstream out;
  out << "d,n,k,lhs,rhs,check_name,pass\n";
  for (const LemmaCheck& c : checks) {
    out << c.d << ',' << c.n << ',' << c.k << ',' << c.lhs << ',' << c.rhs << ',' << c.check_name << ','
        << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

namespace {

std::vector<LemmaCheck> sweep_dimension(int d, int n_max) {
  std::vector<LemmaCheck> rows;
  auto add = [&](int n, int k, const auto& lhs, const auto& rhs, const char* name, bool pass) {
    rows.push_back(LemmaCheck{d, n, k, to_string(lhs), to_string(rhs), name, pass});
  };
  for (int n = d + 1; n <= n_max; ++n) {
    const int k_floor = d * n / (d + 1);
    const int k_ceil = static_cast<int>(ceil_div(static_cast<long>(d) * n, d + 1));
    const Integer free_opt = f_dn(d, n);

    const Integer at_floor = f_dnk(d, n, k_floor);
    const Integer at_ceil = f_dnk(d, n, k_ceil);
    add(n, k_floor, at_floor, at_ceil, "floor_ceil_equality", at_floor == at_ceil);
    add(n, k_floor, at_floor, free_opt, "free_optimum_match", at_floor == free_opt);
    if (k_ceil != k_floor) add(n, k_ceil, at_ceil, free_opt, "free_optimum_match", at_ceil == free_opt);

    for (int k = k_ceil; k <= n - 1; ++k) {
      const Integer lhs = f_dn(d, n - k) + f_dn(d - 1, n);
      const Integer rhs = f_dnk(d, n, k);
      add(n, k, lhs, rhs, "strict_inequality", lhs < rhs);

      const Integer next = f_dnk(d, n, k + 1);
      add(n, k, rhs, next, "monotonicity", rhs > next);

      const ErrorTerm e = error_term(d, n, k);
      add(n, k, e.e, Rational(n - k), "error_range", e.in_range());
      add(n, k, e.e_avg, e.strict_bound, "error_strict_bound", e.e_avg < e.strict_bound);
      if (e.average_bound) {
        add(n, k, e.e_avg, *e.average_bound, "error_average_bound", e.e_avg <= *e.average_bound);
      }
    }
  }
  return rows;
}

}  // namespace

LemmaReport verify_comparison_lemma(int d_max, int n_max, unsigned workers) {
  if (d_max < 1) throw DomainError("d_max must be >= 1");
  if (n_max < 2) throw DomainError("n_max must be >= 2");
  std::vector<std::vector<LemmaCheck>> per_d(static_cast<std::size_t>(d_max));
  detail::parallel_for(per_d.size(), resolve_worker_count(workers), [&](std::size_t i) {
    per_d[i] = sweep_dimension(static_cast<int>(i) + 1, n_max);
  });
  LemmaReport report;
  for (auto& rows : per_d) {
    report.checks.insert(report.checks.end(), std::make_move_iterator(rows.begin()),
                         std::make_move_iterator(rows.end()));
  }
  return report;
}

bool ErrorTerm::in_range() const { return e >= 0 && e <= Rational(n - k); }

bool ErrorTerm::bounds_hold() const {
  return in_range() && e_avg < strict_bound && (!average_bound || e_avg <= *average_bound);
}

ErrorTerm error_term(int d, int n, int k) {
  if (d < 1) throw DomainError("error_term needs d >= 1");
  if (k < 0 || k >= n) throw DomainError("error_term needs 0 <= k < n");
  if (static_cast<long>(k) * (d + 1) < static_cast<long>(d) * n) {
    throw DomainError("error_term needs k >= dn/(d+1)");
  }
  ErrorTerm t;
  t.d = d;
  t.n = n;
  t.k = k;
  t.e = 0;
  for (long m = k; m < n; ++m) {
    const long num = static_cast<long>(d - 1) * m;
    t.e += Rational(ceil_div(num, d)) - Rational(num, d);
  }
  t.e.canonicalize();
  t.e_avg = t.e / Rational(n - k);
  t.strict_bound = Rational(d, 2 * (d + 1)) + Rational(k) - Rational(static_cast<long>(d) * n, d + 1);
  t.strict_bound.canonicalize();
  if (k == ceil_div(static_cast<long>(d) * n, d + 1)) {
    const int r = n % (d + 1);
    t.average_bound = Rational(d + r - 1, 2 * d);
    t.average_bound->canonicalize();
  }
  return t;
}

}  // namespace angleopt
