// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "test_support.hpp"

#include <angleopt/closed_form.hpp>
#include <angleopt/geometry.hpp>
#include <angleopt/measures.hpp>
#include <angleopt/optimizer.hpp>
#include <angleopt/rational_qp.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace ao = angleopt;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const std::string& title, bool pass, const std::string& detail, double secs) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " -- " << detail << " ["
            << buf << "]\n"
            << std::flush;
  if (!pass) ++failures;
}

void criterion(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  const auto t0 = Clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(id, title, pass, detail, seconds_since(t0));
}

// 1. f_dn equals the partition oracle, d <= 5, n <= 30, in under 5 s.
bool ledger_exactness(std::string& detail) {
  const auto t0 = Clock::now();
  int mismatches = 0;
  int cases = 0;
  for (int d = 1; d <= 5; ++d) {
    for (int n = 0; n <= 30; ++n) {
      ++cases;
      if (ao::f_dn(d, n) != ao::partition_oracle(d, n).max_value) ++mismatches;
    }
  }
  const double t = seconds_since(t0);
  detail = std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches, limit 5 s";
  return mismatches == 0 && t < 5.0;
}

// 2. Comparison lemma sweep d <= 6, n <= 40 with no violations, under 10 s.
bool lemma_sweep(std::string& detail) {
  const auto t0 = Clock::now();
  const ao::LemmaReport r = ao::verify_comparison_lemma(6, 40);
  const double t = seconds_since(t0);
  std::size_t strict = 0, mono = 0, eq = 0, bad = 0;
  for (const ao::LemmaCheck& c : r.checks) {
    const bool core = c.check_name == "strict_inequality" || c.check_name == "monotonicity" ||
                      c.check_name == "floor_ceil_equality";
    strict += c.check_name == "strict_inequality";
    mono += c.check_name == "monotonicity";
    eq += c.check_name == "floor_ceil_equality";
    if (core && !c.pass) ++bad;
  }
  detail = std::to_string(strict) + " strict, " + std::to_string(mono) + " monotonicity, " + std::to_string(eq) +
           " equality checks; " + std::to_string(bad) + " violations (" + std::to_string(r.failures()) +
           " failures overall), limit 10 s";
  return bad == 0 && r.passed() && strict > 0 && mono > 0 && eq > 0 && t < 10.0;
}

// 3. Uniform splits on a frame reach d/(2(d+1)) exactly at alpha = inf.
bool weighted_value(std::string& detail) {
  int ok = 0;
  for (int d = 1; d <= 8; ++d) {
    const std::vector<std::pair<ao::Rational, ao::Rational>> splits(
        static_cast<std::size_t>(d + 1), {ao::make_rational(1, 2 * (d + 1)), ao::make_rational(1, 2 * (d + 1))});
    const ao::EnergyValue e = ao::energy(ao::conjectured_maximizer_weighted(d, splits), ao::Alpha::infinity());
    if (e.exact && *e.exact == ao::make_rational(d, 2 * (d + 1))) ++ok;
  }
  detail = std::to_string(ok) + "/8 dimensions exact";
  return ok == 8;
}

// 4. Counting energy of the conjectured maximizer equals f_dn exactly.
bool counting_energy(std::string& detail) {
  int ok = 0;
  int cases = 0;
  for (int d = 1; d <= 4; ++d) {
    for (int n = 1; n <= 20; ++n) {
      ++cases;
      const ao::EnergyValue e = ao::energy(ao::conjectured_maximizer(d, n), ao::Alpha::infinity());
      if (e.exact && *e.exact == ao::Rational(ao::f_dn(d, n))) ++ok;
    }
  }
  detail = std::to_string(ok) + "/" + std::to_string(cases) + " exact matches";
  return ok == cases;
}

// 5. Circle closed form vs. the orthogonal pair and vs. 10^5-node quadrature.
bool circle_degeneracy(std::string& detail) {
  const ao::Rational h = ao::make_rational(1, 2);
  const ao::LineConfig pair(1, ao::WeightMode::Probability,
                            {ao::Atom{ao::UnitVector({1.0, 0.0}), h, std::nullopt},
                             ao::Atom{ao::UnitVector({0.0, 1.0}), h, std::nullopt}});
  const double pair_e = ao::energy(pair, ao::Alpha::finite(1.0)).value;
  const double closed1 = ao::uniform_circle_energy(1.0);
  bool pass = std::abs(closed1 - 0.25) <= 1e-12 && std::abs(pair_e - 0.25) <= 1e-12;
  double worst = 0;
  // Rotational symmetry reduces the double integral to one sum over the
  // angle to a fixed point.
  const int nodes = 100000;
  const ao::UnitVector base({1.0, 0.0});
  for (double a : {1.0, 2.0, 3.0}) {
    double sum = 0;
    for (int k = 0; k < nodes; ++k) {
      const double t = 2 * ao::kPi * k / nodes;
      sum += ao::kernel(base, ao::UnitVector({std::cos(t), std::sin(t)}), ao::Alpha::finite(a));
    }
    const double quad = 0.5 * sum / nodes;
    const double err = std::abs(quad - 1.0 / (2 * (a + 1)));
    worst = std::max(worst, std::abs(quad - ao::uniform_circle_energy(a)));
    worst = std::max(worst, err);
  }
  pass = pass && worst <= 1e-8;
  char buf[160];
  std::snprintf(buf, sizeof buf, "E(1)=%.15g, pair=%.15g, worst quadrature error %.2e (tol 1e-8)", closed1,
                pair_e, worst);
  detail = buf;
  return pass;
}

// 6. Energy nonincreasing in alpha; strictly when a pair has Lambda in (0,1).
bool alpha_monotone(std::string& detail) {
  std::mt19937_64 rng(61);
  const double alphas[] = {1.0, 1.5, 2.0, 4.0, 8.0};
  int bad = 0, strict_cases = 0, flat_cases = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + static_cast<int>(rng() % 4);
    ao::LineConfig mu = ao::testing::random_config(d, 1 + static_cast<int>(rng() % 6), rng);
    if (t % 10 == 0) {
      // Frame configurations: every Lambda is 0 or 1, so the energy is flat.
      std::vector<ao::Atom> atoms;
      const int count = 1 + static_cast<int>(rng() % 5);
      for (int i = 0; i < count; ++i) {
        atoms.push_back(ao::Atom{ao::UnitVector::basis(static_cast<std::size_t>(d + 1), rng() % (d + 1),
                                                       rng() % 2 ? 1 : -1),
                                 ao::make_rational(1, count), std::nullopt});
      }
      mu = ao::LineConfig(static_cast<std::size_t>(d), ao::WeightMode::Probability, std::move(atoms));
    }
    bool interior = false;
    const auto atoms = mu.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        const double lam = ao::lambda0(ao::geodesic_distance(atoms[i].point, atoms[j].point));
        if (lam > 1e-9 && lam < 1 - 1e-9) interior = true;
      }
    }
    (interior ? strict_cases : flat_cases) += 1;
    double prev = ao::energy(mu, ao::Alpha::finite(alphas[0])).value;
    for (std::size_t k = 1; k < 5; ++k) {
      const double e = ao::energy(mu, ao::Alpha::finite(alphas[k])).value;
      // Strictness margin is relative: near-antipodal pairs give energies
      // far below 1e-12 that still drop by orders of magnitude.
      const bool ok = interior ? prev - e > 1e-12 * prev : std::abs(prev - e) <= 1e-12;
      if (!ok || e > prev + 1e-12) ++bad;
      prev = e;
    }
  }
  detail = std::to_string(strict_cases) + " strict + " + std::to_string(flat_cases) + " flat configs, " +
           std::to_string(bad) + " violations (relative strictness margin 1e-12)";
  return bad == 0;
}

// Independent energy on rows of x, normalizing on the fly.
double pair_energy(const ao::PointSet& x, double a) {
  double sum = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      double c = x.row(i).dot(x.row(j)) / (x.row(i).norm() * x.row(j).norm());
      c = std::max(-1.0, std::min(1.0, c));
      const double t = std::acos(c);
      sum += std::pow(2.0 / ao::kPi * std::min(t, ao::kPi - t), a);
    }
  }
  return sum / static_cast<double>(x.rows() * x.rows());
}

// 7. Analytic gradient vs. central differences (h = 1e-5) to 1e-5 relative.
bool gradient_check(std::string& detail) {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> g;
  const double alphas[] = {1.5, 2.0, 4.0};
  int checked = 0, skipped = 0, bad = 0;
  double worst = 0;
  while (checked < 100) {
    const int ambient = 2 + static_cast<int>(rng() % 3);
    const int n = 2 + static_cast<int>(rng() % 5);
    const double a = alphas[rng() % 3];
    ao::PointSet x(n, ambient);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < ambient; ++k) x(i, k) = g(rng);
      x.row(i).normalize();
    }
    bool kink = false;
    for (int i = 0; i < n && !kink; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double t = std::acos(std::max(-1.0, std::min(1.0, x.row(i).dot(x.row(j)))));
        if (std::abs(t - ao::kPi / 2) < 1e-3 || t < 1e-3 || ao::kPi - t < 1e-3) kink = true;
      }
    }
    if (kink) {
      ++skipped;
      continue;
    }
    ++checked;
    const ao::PointSet grad = ao::energy_gradient(x, a).gradient;
    ao::PointSet fd(n, ambient);
    const double h = 1e-5;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < ambient; ++k) {
        Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(ambient);
        v(k) = 1;
        v -= x(i, k) * x.row(i);
        ao::PointSet p = x, m = x;
        p.row(i) = (x.row(i) + h * v).normalized();
        m.row(i) = (x.row(i) - h * v).normalized();
        fd(i, k) = (pair_energy(p, a) - pair_energy(m, a)) / (2 * h);
      }
    }
    const double rel = (grad - fd).norm() / std::max(grad.norm(), 1e-12);
    worst = std::max(worst, rel);
    if (rel > 1e-5) ++bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d instances (%d kink-adjacent skipped), worst relative error %.2e, %d over 1e-5",
                checked, skipped, worst, bad);
  detail = buf;
  return bad == 0;
}

// 8. Multistart search never beats, and reaches, the conjectured energy.
bool optimizer_consistency(std::string& detail) {
  struct Case {
    int d, n;
    double alpha;
  };
  const Case cases[] = {{1, 2, 2.0}, {1, 3, 2.0}, {2, 3, 4.0}, {2, 4, 4.0}};
  bool pass = true;
  std::ostringstream out;
  for (const Case& c : cases) {
    ao::OptimizerParams p;
    p.n_starts = 200;
    const auto t0 = Clock::now();
    const ao::OptRun run = ao::optimize(c.d, c.n, c.alpha, p);
    const double t = seconds_since(t0);
    const double conj = ao::energy(ao::conjectured_maximizer(c.d, c.n).to_probability(), ao::Alpha::finite(c.alpha)).value;
    const double gap = conj - run.best_energy;
    const bool ok = std::abs(gap) <= 1e-6 && t < 30.0;
    pass = pass && ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%d,%d,%g) gap %.1e %.1fs%s; ", c.d, c.n, c.alpha, gap, t, ok ? "" : " FAIL");
    out << buf;
  }
  detail = out.str() + "tol 1e-6, limit 30 s each";
  return pass;
}

// 9. Exact simplex witnesses dominate the denominator-30 grid.
bool rational_qp(std::string& detail) {
  std::mt19937_64 rng(91);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const int order = 1 + t % 5;
    const ao::RationalSymMatrix a = ao::testing::random_rational_matrix(order, rng);
    const ao::SimplexWitness w = ao::simplex_extremum(a, ao::Sense::Max);
    ao::Rational sum = 0;
    bool feasible = true;
    for (const ao::Rational& x : w.x) {
      feasible = feasible && x >= 0;
      sum += x;
    }
    feasible = feasible && sum == 1 && w.value == ao::quadratic_value(a, w.x);
    if (!feasible || w.value < ao::testing::grid_best(a, 30, ao::Sense::Max) ||
        !ao::verify_witness(a, w, ao::Sense::Max, 30)) {
      ++bad;
    }
  }
  int uniform_bad = 0;
  for (int m = 2; m <= 8; ++m) {
    std::vector<std::vector<ao::Rational>> rows(static_cast<std::size_t>(m),
                                                std::vector<ao::Rational>(static_cast<std::size_t>(m), 1));
    for (int i = 0; i < m; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    const ao::RationalSymMatrix a(std::move(rows));
    const ao::SimplexWitness w = ao::simplex_extremum(a, ao::Sense::Max);
    bool ok = w.value == ao::make_rational(m - 1, 2 * m) &&
              w.x == std::vector<ao::Rational>(static_cast<std::size_t>(m), ao::make_rational(1, m));
    for (const ao::SimplexWitness& c : ao::kkt_candidates(a)) {
      if (c.x != w.x && !(c.value < w.value)) ok = false;
    }
    if (!ok) ++uniform_bad;
  }
  detail = "100 random matrices: " + std::to_string(bad) + " failures; all-ones order 2..8: " +
           std::to_string(uniform_bad) + " failures";
  return bad == 0 && uniform_bad == 0;
}

int run_shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 10. CLI CSVs are byte-identical across repeats and 1, 2, 8 workers.
bool determinism(std::string& detail) {
  const auto dir = std::filesystem::temp_directory_path() / "angleopt_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = std::string("\"") + ANGLEOPT_CLI_PATH + "\"";
  const std::string jobs[] = {
      "sweep 2 3 --alphas 1.5,2,4 -p '{\"n_starts\":24,\"anneal\":true,\"anneal_sweeps\":30}' --seed 12345",
      "optimize 2 5 3 -p '{\"n_starts\":24}' --seed 777",
      "verify 4 24",
  };
  int mismatches = 0, runs = 0;
  for (std::size_t j = 0; j < std::size(jobs); ++j) {
    std::string reference;
    for (int threads : {1, 2, 8}) {
      for (int rep = 0; rep < 2; ++rep) {
        const auto out = dir / ("job" + std::to_string(j) + "_" + std::to_string(threads) + "_" + std::to_string(rep) + ".csv");
        const int rc = run_shell("ANGLEOPT_THREADS=" + std::to_string(threads) + " " + cli + " " + jobs[j] + " -o \"" +
                                 out.string() + "\" > /dev/null 2>&1");
        ++runs;
        const std::string csv = slurp(out);
        if (rc != 0 || csv.empty()) {
          ++mismatches;
          continue;
        }
        if (reference.empty()) reference = csv;
        else if (csv != reference) ++mismatches;
      }
    }
  }
  std::filesystem::remove_all(dir);
  detail = std::to_string(runs) + " CLI runs over 3 commands x {1,2,8} workers x 2 repeats, " +
           std::to_string(mismatches) + " differing outputs";
  return mismatches == 0;
}

}  // namespace

int main() {
  criterion(1, "ledger exactness", ledger_exactness);
  criterion(2, "comparison-lemma sweep d<=6, n<=40", lemma_sweep);
  criterion(3, "weighted frame value d/(2(d+1))", weighted_value);
  criterion(4, "conjectured maximizer energy = F_{d,N}", counting_energy);
  criterion(5, "circle degeneracy at alpha = 1 and quadrature", circle_degeneracy);
  criterion(6, "energy monotone in alpha", alpha_monotone);
  criterion(7, "gradient vs. finite differences", gradient_check);
  criterion(8, "optimizer conjecture-consistency", optimizer_consistency);
  criterion(9, "rational simplex QP witnesses", rational_qp);
  criterion(10, "CLI determinism across workers", determinism);
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
