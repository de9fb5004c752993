// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <angleopt/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace angleopt {

/// Optimal alpha = infinity energy of n unit masses on S^d, built from
/// F_{d,0} = 0 and F_{d,m+1} - F_{d,m} = ceil(dm/(d+1)). F_{0,n} = 0.
/// Throws DomainError for negative arguments.
Integer f_dn(int d, int n);

/// F_{d-1,k} + k(n-k): optimal energy of n masses with k of them on a fixed
/// hyperplane. Throws DomainError unless d >= 1 and 0 <= k <= n.
Integer f_dnk(int d, int n, int k);

struct PartitionMax {
  Integer max_value;
  /// Nonincreasing parts, padded with zeros to d+1 entries.
  std::vector<int> profile;
};

/// Exhaustive search over partitions of n into at most d+1 parts for the
/// maximum of sum_{i<j} n_i n_j. Ties go to the lexicographically largest
/// nonincreasing profile.
PartitionMax partition_oracle(int d, int n);

struct LemmaCheck {
  int d = 0;
  int n = 0;
  int k = 0;
  std::string lhs;
  std::string rhs;
  std::string check_name;
  bool pass = false;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  /// Columns d,n,k,lhs,rhs,check_name,pass.
  std::string to_csv() const;
};

/// Sweeps 1 <= d <= d_max, d+1 <= n <= n_max and every k with
/// dn/(d+1) <= k <= n-1, checking the strict comparison inequality, strict
/// monotonicity in k, the floor/ceiling equality, agreement of the
/// hyperplane-constrained optimum with F_{d,n} at the floor/ceiling split,
/// and the average-error bounds. Rows are sorted by (d, n, k, check).
/// `workers` = 0 picks the default worker count.
LemmaReport verify_comparison_lemma(int d_max, int n_max, unsigned workers = 0);

/// Rounding error e = sum_{m=k}^{n-1} (ceil((d-1)m/d) - (d-1)m/d) and its
/// average over the n-k terms.
struct ErrorTerm {
  int d = 0;
  int n = 0;
  int k = 0;
  Rational e;
  Rational e_avg;
  /// d/(2(d+1)) + k - dn/(d+1); e_avg must stay strictly below it.
  Rational strict_bound;
  /// (d+r-1)/(2d) with r = n mod (d+1); only when k = ceil(dn/(d+1)).
  std::optional<Rational> average_bound;

  bool in_range() const;
  bool bounds_hold() const;
};

/// Throws DomainError unless d >= 1, k < n and k >= dn/(d+1).
ErrorTerm error_term(int d, int n, int k);

}  // namespace angleopt
