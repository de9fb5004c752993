// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <angleopt/angleopt.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <string>

extern "C" int angleopt_c_smoke(void);

namespace {

// Owns a string returned by the library.
struct Str {
  char* p = nullptr;
  ~Str() { angleopt_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

constexpr const char* kBasis3 =
    R"({"dimension":2,"weight_mode":"probability","atoms":[)"
    R"({"coords":[1,0,0],"weight_num":1,"weight_den":3},)"
    R"({"coords":[0,1,0],"weight_num":1,"weight_den":3},)"
    R"({"coords":[0,0,1],"weight_num":1,"weight_den":3}]})";

TEST(CApi, CompilesAsC) { EXPECT_EQ(angleopt_c_smoke(), 1); }

TEST(CApi, Version) { EXPECT_STREQ(angleopt_version(), "1.0.0"); }

TEST(CApi, EnergyOfBasis) {
  angleopt_config* cfg = nullptr;
  ASSERT_EQ(angleopt_config_parse(kBasis3, &cfg), ANGLEOPT_OK);
  EXPECT_EQ(angleopt_config_size(cfg), 3u);
  double v = 0;
  Str exact;
  ASSERT_EQ(angleopt_energy(cfg, 2.0, 1e-9, &v, &exact.p), ANGLEOPT_OK);
  EXPECT_EQ(exact.s(), "1/3");
  EXPECT_NEAR(v, 1.0 / 3, 1e-15);
  ASSERT_EQ(angleopt_energy(cfg, INFINITY, 1e-9, &v, nullptr), ANGLEOPT_OK);
  EXPECT_NEAR(v, 1.0 / 3, 1e-15);
  Str b;
  ASSERT_EQ(angleopt_bilinear(cfg, cfg, 3.0, 1e-9, &v, &b.p), ANGLEOPT_OK);
  EXPECT_EQ(b.s(), "2/3");
  int eq = 0;
  ASSERT_EQ(angleopt_equivalent(cfg, cfg, 1e-9, &eq), ANGLEOPT_OK);
  EXPECT_EQ(eq, 1);
  Str json;
  ASSERT_EQ(angleopt_config_to_json(cfg, &json.p), ANGLEOPT_OK);
  angleopt_config* back = nullptr;
  ASSERT_EQ(angleopt_config_parse(json.p, &back), ANGLEOPT_OK);
  EXPECT_EQ(angleopt_config_size(back), 3u);
  angleopt_config_free(back);
  angleopt_config_free(cfg);
}

TEST(CApi, ErrorCodes) {
  angleopt_config* cfg = nullptr;
  EXPECT_EQ(angleopt_config_parse("{not json", &cfg), ANGLEOPT_ERROR_PARSE);
  EXPECT_NE(std::string(angleopt_last_error()), "");
  EXPECT_EQ(angleopt_config_parse(R"({"dimension":1,"weight_mode":"probability","atoms":[{"coords":[1,0],"weight_num":1,"weight_den":2}]})", &cfg),
            ANGLEOPT_ERROR_VALIDATION);
  EXPECT_EQ(angleopt_config_parse(nullptr, &cfg), ANGLEOPT_ERROR_INVALID_ARGUMENT);
  Str out;
  EXPECT_EQ(angleopt_ledger_f_dnk(2, 4, 5, &out.p), ANGLEOPT_ERROR_DOMAIN);
  EXPECT_EQ(out.p, nullptr);
  angleopt_config* a = nullptr;
  angleopt_config* b = nullptr;
  ASSERT_EQ(angleopt_config_conjectured(1, 2, &a), ANGLEOPT_OK);
  ASSERT_EQ(angleopt_config_conjectured(2, 2, &b), ANGLEOPT_OK);
  double v;
  EXPECT_EQ(angleopt_bilinear(a, b, 2.0, 1e-9, &v, nullptr), ANGLEOPT_ERROR_DIMENSION);
  EXPECT_EQ(angleopt_energy(a, 0.5, 1e-9, &v, nullptr), ANGLEOPT_ERROR_DOMAIN);
  angleopt_config_free(a);
  angleopt_config_free(b);
  angleopt_matrix* m = nullptr;
  EXPECT_EQ(angleopt_matrix_parse(R"([[1,2],[3,4]])", &m), ANGLEOPT_ERROR_VALIDATION);
  EXPECT_EQ(angleopt_last_error() == nullptr, false);
  angleopt_config_free(nullptr);
  angleopt_run_free(nullptr);
}

TEST(CApi, Ledger) {
  Str a, b;
  ASSERT_EQ(angleopt_ledger_f_dn(2, 3, &a.p), ANGLEOPT_OK);
  EXPECT_EQ(a.s(), "3");
  ASSERT_EQ(angleopt_ledger_f_dnk(2, 4, 3, &b.p), ANGLEOPT_OK);
  EXPECT_EQ(b.s(), "5");
  Str csv;
  size_t checks = 0, failures = 1;
  ASSERT_EQ(angleopt_verify_lemma(4, 20, 2, &csv.p, &checks, &failures), ANGLEOPT_OK);
  EXPECT_GT(checks, 0u);
  EXPECT_EQ(failures, 0u);
  EXPECT_EQ(csv.s().rfind("d,n,k,lhs,rhs,check_name,pass\n", 0), 0u);
}

TEST(CApi, WeightedMaximizer) {
  const char* a[] = {"1/4", "1/2"};
  const char* b[] = {"1/4", "0"};
  angleopt_config* cfg = nullptr;
  ASSERT_EQ(angleopt_config_weighted(1, a, b, 2, &cfg), ANGLEOPT_OK);
  EXPECT_EQ(angleopt_config_size(cfg), 3u);
  double v;
  Str exact;
  ASSERT_EQ(angleopt_energy(cfg, INFINITY, 1e-9, &v, &exact.p), ANGLEOPT_OK);
  EXPECT_EQ(exact.s(), "1/4");
  angleopt_config_free(cfg);
  const char* bad[] = {"1/4", "1/4"};
  EXPECT_EQ(angleopt_config_weighted(1, a, bad, 2, &cfg), ANGLEOPT_ERROR_VALIDATION);
  const char* junk[] = {"x", "0"};
  EXPECT_EQ(angleopt_config_weighted(1, junk, b, 2, &cfg), ANGLEOPT_ERROR_PARSE);
}

TEST(CApi, OptimizeAndSweep) {
  angleopt_params* p = nullptr;
  ASSERT_EQ(angleopt_params_parse(R"({"n_starts":8,"master_seed":7})", &p), ANGLEOPT_OK);
  EXPECT_EQ(angleopt_params_seed(p), 7u);
  angleopt_run* run = nullptr;
  ASSERT_EQ(angleopt_optimize(1, 2, 2.0, p, &run), ANGLEOPT_OK);
  angleopt_run_summary s{};
  ASSERT_EQ(angleopt_run_summarize(run, &s), ANGLEOPT_OK);
  EXPECT_EQ(s.d, 1);
  EXPECT_EQ(s.n, 2);
  EXPECT_NEAR(s.best_energy, 0.25, 1e-8);
  EXPECT_EQ(s.equivalent, 1);
  EXPECT_EQ(s.seed, 7u);
  angleopt_config* best = nullptr;
  ASSERT_EQ(angleopt_run_best_config(run, &best), ANGLEOPT_OK);
  EXPECT_EQ(angleopt_config_size(best), 2u);
  angleopt_config_free(best);
  Str csv1;
  ASSERT_EQ(angleopt_run_csv(run, &csv1.p), ANGLEOPT_OK);
  angleopt_run_free(run);

  ASSERT_EQ(angleopt_params_set_workers(p, 3), ANGLEOPT_OK);
  ASSERT_EQ(angleopt_optimize(1, 2, 2.0, p, &run), ANGLEOPT_OK);
  Str csv2;
  ASSERT_EQ(angleopt_run_csv(run, &csv2.p), ANGLEOPT_OK);
  angleopt_run_free(run);
  EXPECT_EQ(csv1.s(), csv2.s());

  const double alphas[] = {2.0, 4.0};
  Str sweep;
  size_t exceed = 9;
  ASSERT_EQ(angleopt_sweep(2, 3, alphas, 2, p, &sweep.p, &exceed), ANGLEOPT_OK);
  EXPECT_EQ(exceed, 0u);
  const double bad[] = {4.0, 2.0};
  Str none;
  EXPECT_EQ(angleopt_sweep(2, 3, bad, 2, p, &none.p, nullptr), ANGLEOPT_ERROR_DOMAIN);

  Str pj;
  ASSERT_EQ(angleopt_params_to_json(p, &pj.p), ANGLEOPT_OK);
  EXPECT_NE(pj.s().find("\"n_starts\""), std::string::npos);
  angleopt_params_free(p);
  EXPECT_EQ(angleopt_params_parse(R"({"bogus":1})", &p), ANGLEOPT_ERROR_PARSE);
  ASSERT_EQ(angleopt_params_parse(nullptr, &p), ANGLEOPT_OK);
  EXPECT_EQ(angleopt_params_seed(p), 20201015u);
  angleopt_params_free(p);
}

TEST(CApi, QuadraticProgram) {
  angleopt_matrix* m = nullptr;
  ASSERT_EQ(angleopt_matrix_parse(R"([["0","1","1"],["1","0","1"],["1","1","0"]])", &m), ANGLEOPT_OK);
  Str w;
  ASSERT_EQ(angleopt_qp_solve(m, ANGLEOPT_MAXIMIZE, &w.p), ANGLEOPT_OK);
  EXPECT_EQ(nlohmann::json::parse(w.s())["x"], nlohmann::json({"1/3", "1/3", "1/3"}));
  int ok = 0;
  ASSERT_EQ(angleopt_qp_verify(m, w.p, ANGLEOPT_MAXIMIZE, 60, &ok), ANGLEOPT_OK);
  EXPECT_EQ(ok, 1);
  ASSERT_EQ(angleopt_qp_verify(m, w.p, ANGLEOPT_MINIMIZE, 60, &ok), ANGLEOPT_OK);
  EXPECT_EQ(ok, 0);
  EXPECT_EQ(angleopt_qp_verify(m, "{}", ANGLEOPT_MAXIMIZE, 60, &ok), ANGLEOPT_ERROR_PARSE);
  angleopt_matrix_free(m);

  angleopt_config* cfg = nullptr;
  ASSERT_EQ(angleopt_config_parse(kBasis3, &cfg), ANGLEOPT_OK);
  Str s;
  ASSERT_EQ(angleopt_support_optimum(cfg, 1e-9, &s.p), ANGLEOPT_OK);
  EXPECT_EQ(nlohmann::json::parse(s.s())["value"], "1/3");
  angleopt_config_free(cfg);
}

TEST(CApi, ContentHash) {
  EXPECT_EQ(angleopt_content_hash("", 0), 0xcbf29ce484222325ULL);
  EXPECT_EQ(angleopt_content_hash("a", 1), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
