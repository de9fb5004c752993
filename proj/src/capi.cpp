// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <angleopt/angleopt.h>
#include <angleopt/closed_form.hpp>
#include <angleopt/errors.hpp>
#include <angleopt/measures.hpp>
#include <angleopt/optimizer.hpp>
#include <angleopt/rational_qp.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

struct angleopt_config {
  angleopt::LineConfig value;
};

struct angleopt_params {
  angleopt::OptimizerParams value;
};

struct angleopt_run {
  angleopt::OptRun value;
};

struct angleopt_matrix {
  angleopt::RationalSymMatrix value;
};

namespace {

thread_local std::string last_error;

angleopt_status fail(angleopt_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps library exceptions onto status codes.
template <class F>
angleopt_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return ANGLEOPT_OK;
  } catch (const angleopt::ParseError& e) {
    return fail(ANGLEOPT_ERROR_PARSE, e.what());
  } catch (const angleopt::ValidationError& e) {
    return fail(ANGLEOPT_ERROR_VALIDATION, e.what());
  } catch (const angleopt::DimensionError& e) {
    return fail(ANGLEOPT_ERROR_DIMENSION, e.what());
  } catch (const angleopt::DomainError& e) {
    return fail(ANGLEOPT_ERROR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ANGLEOPT_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ANGLEOPT_ERROR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

angleopt::Alpha to_alpha(double alpha) {
  if (std::isinf(alpha) && alpha > 0) return angleopt::Alpha::infinity();
  return angleopt::Alpha::finite(alpha);
}

#define ANGLEOPT_REQUIRE(cond)                                                        \
  do {                                                                                \
    if (!(cond)) return fail(ANGLEOPT_ERROR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

void write_energy(const angleopt::EnergyValue& e, double* value, char** exact) {
  *value = e.value;
  if (exact != nullptr) *exact = e.exact ? dup_string(angleopt::to_string(*e.exact)) : nullptr;
}

}  // namespace

extern "C" {

const char* angleopt_version(void) { return "1.0.0"; }

const char* angleopt_last_error(void) { return last_error.c_str(); }

void angleopt_string_free(char* s) { std::free(s); }

angleopt_status angleopt_config_parse(const char* json, angleopt_config** out) {
  ANGLEOPT_REQUIRE(json != nullptr && out != nullptr);
  return guarded([&] { *out = new angleopt_config{angleopt::config_from_json(json)}; });
}

angleopt_status angleopt_config_conjectured(int d, int n, angleopt_config** out) {
  ANGLEOPT_REQUIRE(out != nullptr);
  return guarded([&] { *out = new angleopt_config{angleopt::conjectured_maximizer(d, n)}; });
}

angleopt_status angleopt_config_weighted(int d, const char* const* a, const char* const* b, size_t count,
                                         angleopt_config** out) {
  ANGLEOPT_REQUIRE(out != nullptr && (count == 0 || (a != nullptr && b != nullptr)));
  return guarded([&] {
    std::vector<std::pair<angleopt::Rational, angleopt::Rational>> splits;
    for (size_t i = 0; i < count; ++i) {
      if (a[i] == nullptr || b[i] == nullptr) throw angleopt::ParseError("null split entry");
      splits.emplace_back(angleopt::parse_rational(a[i]), angleopt::parse_rational(b[i]));
    }
    *out = new angleopt_config{angleopt::conjectured_maximizer_weighted(d, splits)};
  });
}

angleopt_status angleopt_config_to_json(const angleopt_config* config, char** out) {
  ANGLEOPT_REQUIRE(config != nullptr && out != nullptr);
  return guarded([&] { *out = dup_string(angleopt::config_to_json(config->value)); });
}

angleopt_status angleopt_config_to_probability(const angleopt_config* config, angleopt_config** out) {
  ANGLEOPT_REQUIRE(config != nullptr && out != nullptr);
  return guarded([&] { *out = new angleopt_config{config->value.to_probability()}; });
}

size_t angleopt_config_size(const angleopt_config* config) { return config ? config->value.size() : 0; }

void angleopt_config_free(angleopt_config* config) { delete config; }

angleopt_status angleopt_energy(const angleopt_config* config, double alpha, double orth_tol, double* value,
                                char** exact) {
  ANGLEOPT_REQUIRE(config != nullptr && value != nullptr);
  return guarded([&] { write_energy(angleopt::energy(config->value, to_alpha(alpha), orth_tol), value, exact); });
}

angleopt_status angleopt_bilinear(const angleopt_config* mu, const angleopt_config* nu, double alpha,
                                  double orth_tol, double* value, char** exact) {
  ANGLEOPT_REQUIRE(mu != nullptr && nu != nullptr && value != nullptr);
  return guarded(
      [&] { write_energy(angleopt::bilinear(mu->value, nu->value, to_alpha(alpha), orth_tol), value, exact); });
}

angleopt_status angleopt_equivalent(const angleopt_config* mu, const angleopt_config* nu, double tol,
                                    int* result) {
  ANGLEOPT_REQUIRE(mu != nullptr && nu != nullptr && result != nullptr);
  return guarded([&] { *result = angleopt::equivalent(mu->value, nu->value, tol) ? 1 : 0; });
}

angleopt_status angleopt_ledger_f_dn(int d, int n, char** out) {
  ANGLEOPT_REQUIRE(out != nullptr);
  return guarded([&] { *out = dup_string(angleopt::to_string(angleopt::f_dn(d, n))); });
}

angleopt_status angleopt_ledger_f_dnk(int d, int n, int k, char** out) {
  ANGLEOPT_REQUIRE(out != nullptr);
  return guarded([&] { *out = dup_string(angleopt::to_string(angleopt::f_dnk(d, n, k))); });
}

angleopt_status angleopt_verify_lemma(int d_max, int n_max, unsigned workers, char** csv, size_t* checks,
                                      size_t* failures) {
  return guarded([&] {
    const auto report = angleopt::verify_comparison_lemma(d_max, n_max, workers);
    if (csv != nullptr) *csv = dup_string(report.to_csv());
    if (checks != nullptr) *checks = report.checks.size();
    if (failures != nullptr) *failures = report.failures();
  });
}

angleopt_status angleopt_params_parse(const char* json, angleopt_params** out) {
  ANGLEOPT_REQUIRE(out != nullptr);
  return guarded([&] {
    *out = new angleopt_params{json == nullptr ? angleopt::OptimizerParams{} : angleopt::params_from_json(json)};
  });
}

angleopt_status angleopt_params_to_json(const angleopt_params* params, char** out) {
  ANGLEOPT_REQUIRE(params != nullptr && out != nullptr);
  return guarded([&] { *out = dup_string(angleopt::params_to_json(params->value)); });
}

angleopt_status angleopt_params_set_workers(angleopt_params* params, unsigned workers) {
  ANGLEOPT_REQUIRE(params != nullptr);
  params->value.workers = workers;
  return ANGLEOPT_OK;
}

uint64_t angleopt_params_seed(const angleopt_params* params) {
  return params ? params->value.master_seed : 0;
}

void angleopt_params_free(angleopt_params* params) { delete params; }

angleopt_status angleopt_optimize(int d, int n, double alpha, const angleopt_params* params, angleopt_run** out) {
  ANGLEOPT_REQUIRE(params != nullptr && out != nullptr);
  return guarded([&] { *out = new angleopt_run{angleopt::optimize(d, n, alpha, params->value)}; });
}

angleopt_status angleopt_run_summarize(const angleopt_run* run, angleopt_run_summary* out) {
  ANGLEOPT_REQUIRE(run != nullptr && out != nullptr);
  return guarded([&] {
    const angleopt::SweepRow r = angleopt::summarize(run->value);
    *out = angleopt_run_summary{r.alpha, r.d, r.n, r.best_energy, r.conjectured_energy, r.gap,
                                r.equivalent ? 1 : 0, r.converged_fraction, r.seed};
  });
}

angleopt_status angleopt_run_best_config(const angleopt_run* run, angleopt_config** out) {
  ANGLEOPT_REQUIRE(run != nullptr && out != nullptr);
  return guarded([&] { *out = new angleopt_config{run->value.best_config}; });
}

angleopt_status angleopt_run_csv(const angleopt_run* run, char** csv) {
  ANGLEOPT_REQUIRE(run != nullptr && csv != nullptr);
  return guarded([&] {
    const angleopt::SweepRow row = angleopt::summarize(run->value);
    *csv = dup_string(angleopt::sweep_csv(std::span(&row, 1)));
  });
}

void angleopt_run_free(angleopt_run* run) { delete run; }

angleopt_status angleopt_sweep(int d, int n, const double* alphas, size_t count, const angleopt_params* params,
                               char** csv, size_t* exceedances) {
  ANGLEOPT_REQUIRE(params != nullptr && csv != nullptr && (count == 0 || alphas != nullptr));
  return guarded([&] {
    const auto rows = angleopt::alpha_sweep(d, n, std::span(alphas, count), params->value);
    *csv = dup_string(angleopt::sweep_csv(rows));
    if (exceedances != nullptr) *exceedances = angleopt::count_exceedances(rows);
  });
}

angleopt_status angleopt_matrix_parse(const char* json, angleopt_matrix** out) {
  ANGLEOPT_REQUIRE(json != nullptr && out != nullptr);
  return guarded([&] { *out = new angleopt_matrix{angleopt::matrix_from_json(json)}; });
}

void angleopt_matrix_free(angleopt_matrix* matrix) { delete matrix; }

namespace {
angleopt::Sense to_sense(angleopt_sense s) {
  return s == ANGLEOPT_MINIMIZE ? angleopt::Sense::Min : angleopt::Sense::Max;
}
}  // namespace

angleopt_status angleopt_qp_solve(const angleopt_matrix* matrix, angleopt_sense sense, char** witness_json) {
  ANGLEOPT_REQUIRE(matrix != nullptr && witness_json != nullptr);
  return guarded([&] {
    const auto w = angleopt::simplex_extremum(matrix->value, to_sense(sense));
    *witness_json = dup_string(angleopt::witness_to_json(w, to_sense(sense)));
  });
}

angleopt_status angleopt_qp_verify(const angleopt_matrix* matrix, const char* witness_json, angleopt_sense sense,
                                   int grid_res, int* ok) {
  ANGLEOPT_REQUIRE(matrix != nullptr && witness_json != nullptr && ok != nullptr);
  return guarded([&] {
    const auto w = angleopt::witness_from_json(witness_json);
    *ok = angleopt::verify_witness(matrix->value, w, to_sense(sense), grid_res) ? 1 : 0;
  });
}

angleopt_status angleopt_support_optimum(const angleopt_config* support, double orth_tol, char** witness_json) {
  ANGLEOPT_REQUIRE(support != nullptr && witness_json != nullptr);
  return guarded([&] {
    const auto w = angleopt::support_weight_optimum(support->value, orth_tol);
    *witness_json = dup_string(angleopt::witness_to_json(w, angleopt::Sense::Max));
  });
}

uint64_t angleopt_content_hash(const char* data, size_t size) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < size; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // extern "C"
